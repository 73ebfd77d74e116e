//! Arithmetic on the extended complex plane and the 2x2 Moebius maps
//! that drive continued fraction evaluation.
//!
//! Points carry homogeneous `(num, den)` coordinates so that division by
//! zero is represented rather than trapped: `den == 0` encodes the point
//! at infinity, and seeds of infinity are first-class values.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for cross-multiplied equality of projective points.
pub const DEFAULT_EQ_TOL: f64 = 1e-12;

/// Default argument tolerance for sector membership.
pub const DEFAULT_ARG_TOLERANCE: f64 = 1e-12;

// Homogeneous pairs and map entries are rescaled whenever the largest
// magnitude leaves this band; the action on points is scale-invariant.
const RESCALE_LOW: f64 = 0.5;
const RESCALE_HIGH: f64 = 2.0;

/// Exponent of the power of two nearest to `m` on a log scale, clamped to
/// the normal range so the factor itself can neither overflow nor vanish.
pub(crate) fn pow2_exponent(m: f64) -> f64 {
    debug_assert!(m.is_finite() && m > 0.0);
    m.log2().round().clamp(-1022.0, 1023.0)
}

/// Power of two nearest to `m`. Dividing by it is exact in binary64, so
/// rescaling never perturbs the represented point.
pub(crate) fn pow2_near(m: f64) -> f64 {
    pow2_exponent(m).exp2()
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A point of the extended complex plane in homogeneous coordinates.
///
/// The value is `num / den`; `den == 0` with `num != 0` is the point at
/// infinity. Two points are equal iff their cross products agree.
#[derive(Debug, Clone, Copy)]
pub struct ExtendedComplex {
    num: Complex64,
    den: Complex64,
}

impl ExtendedComplex {
    /// Builds a point from a homogeneous pair. The pair `(0, 0)` is rejected.
    pub fn new(num: Complex64, den: Complex64) -> Result<Self> {
        if num == ZERO && den == ZERO {
            return Err(Error::Domain(
                "homogeneous pair (0, 0) does not name a point".into(),
            ));
        }
        Ok(Self { num, den }.normalized())
    }

    /// Internal constructor for pairs produced by nonsingular maps, where
    /// `(0, 0)` cannot arise.
    pub(crate) fn raw(num: Complex64, den: Complex64) -> Self {
        debug_assert!(num != ZERO || den != ZERO);
        Self { num, den }.normalized()
    }

    pub fn finite(value: Complex64) -> Self {
        Self {
            num: value,
            den: ONE,
        }
        .normalized()
    }

    pub fn infinity() -> Self {
        Self {
            num: ONE,
            den: ZERO,
        }
    }

    pub fn zero() -> Self {
        Self {
            num: ZERO,
            den: ONE,
        }
    }

    pub fn num(&self) -> Complex64 {
        self.num
    }

    pub fn den(&self) -> Complex64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.num == ZERO
    }

    /// The value as an ordinary complex number, `None` at infinity.
    pub fn to_complex(&self) -> Option<Complex64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.num / self.den)
        }
    }

    /// Cross-multiplied equality: true iff
    /// `|num_x den_y - num_y den_x| <= tol * max(|num_x den_y|, |num_y den_x|, 1)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let xy = self.num * other.den;
        let yx = other.num * self.den;
        (xy - yx).norm() <= tol * xy.norm().max(yx.norm()).max(1.0)
    }

    /// `1 / z`, pole-safe.
    pub fn reciprocal(&self) -> Self {
        Self::raw(self.den, self.num)
    }

    /// `-1 / z`, pole-safe.
    pub fn neg_reciprocal(&self) -> Self {
        Self::raw(-self.den, self.num)
    }

    fn normalized(self) -> Self {
        let m = self.num.norm().max(self.den.norm());
        if m.is_finite() && m > 0.0 && !(RESCALE_LOW..=RESCALE_HIGH).contains(&m) {
            let s = pow2_near(m);
            Self {
                num: self.num / s,
                den: self.den / s,
            }
        } else {
            self
        }
    }
}

impl std::fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.to_complex() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "inf"),
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(value: Complex64) -> Self {
        Self::finite(value)
    }
}

impl From<f64> for ExtendedComplex {
    fn from(value: f64) -> Self {
        Self::finite(Complex64::new(value, 0.0))
    }
}

/// The closed sector `{ z : |Arg z| <= half_angle }`.
///
/// Zero is declared a member of every sector (its argument is undefined,
/// and it lies in the closure); infinity is a member of none.
#[derive(Debug, Clone, Copy)]
pub struct Sector {
    half_angle: f64,
    arg_tolerance: f64,
}

impl Sector {
    /// Half-angle must lie in `[0, pi/2)`.
    pub fn new(half_angle: f64) -> Result<Self> {
        if !half_angle.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&half_angle) {
            return Err(Error::Domain(format!(
                "sector half-angle must lie in [0, pi/2), got {half_angle}"
            )));
        }
        Ok(Self {
            half_angle,
            arg_tolerance: DEFAULT_ARG_TOLERANCE,
        })
    }

    pub fn with_arg_tolerance(mut self, arg_tolerance: f64) -> Self {
        self.arg_tolerance = arg_tolerance;
        self
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    pub fn arg_tolerance(&self) -> f64 {
        self.arg_tolerance
    }

    pub fn contains(&self, z: &ExtendedComplex) -> bool {
        match z.to_complex() {
            Some(value) => self.contains_value(value),
            None => false,
        }
    }

    pub fn contains_value(&self, z: Complex64) -> bool {
        if z == ZERO {
            return true;
        }
        z.arg().abs() <= self.half_angle + self.arg_tolerance
    }
}

/// A 2x2 complex matrix with nonzero determinant, acting on the extended
/// plane as `w -> (a w + b) / (c w + d)`.
#[derive(Debug, Clone, Copy)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let map = Self { a, b, c, d };
        if map.determinant() == ZERO {
            return Err(Error::Domain(
                "moebius map must have a nonzero determinant".into(),
            ));
        }
        Ok(map.renormalized())
    }

    pub fn identity() -> Self {
        Self {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
        }
    }

    /// The elementary step `w -> 1 / (element + w)` attached to a
    /// continued fraction element. The element must be nonzero.
    pub fn element_step(element: Complex64) -> Result<Self> {
        if element == ZERO {
            return Err(Error::InvalidElement);
        }
        Ok(Self {
            a: ZERO,
            b: ONE,
            c: ONE,
            d: element,
        })
    }

    pub fn entries(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product; the action equals the composition of actions.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
        .renormalized()
    }

    /// Homogeneous action on a point. With a nonzero determinant the
    /// result pair cannot be `(0, 0)`.
    pub fn apply(&self, w: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::raw(
            self.a * w.num + self.b * w.den,
            self.c * w.num + self.d * w.den,
        )
    }

    /// Rescales all four entries whenever the largest magnitude leaves
    /// `[1/2, 2]`; the scale factor is discarded.
    pub fn renormalized(self) -> Self {
        let m = self
            .a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm());
        if m.is_finite() && m > 0.0 && !(RESCALE_LOW..=RESCALE_HIGH).contains(&m) {
            let s = pow2_near(m);
            Self {
                a: self.a / s,
                b: self.b / s,
                c: self.c / s,
                d: self.d / s,
            }
        } else {
            self
        }
    }
}

impl std::ops::Mul for MoebiusMap {
    type Output = MoebiusMap;

    fn mul(self, rhs: Self) -> Self::Output {
        self.compose(&rhs)
    }
}
