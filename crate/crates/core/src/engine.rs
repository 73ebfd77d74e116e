//! Continued fraction evaluation: the Wallis-Euler recurrence, convergents,
//! tail and reverse sequences, even/odd limits, and the pairwise sum bound
//! for positive fractions.
//!
//! All fractions here have unit numerators, `K(1/b_n)`. Numerator and
//! denominator iterates grow or decay geometrically, so the rolling state
//! carries a cumulative positive rescale factor; every ratio the caller can
//! observe is invariant under that rescaling.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::projective::{ExtendedComplex, Sector};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Joint rescaling triggers when the largest state magnitude leaves this band.
pub const RENORM_LOW: f64 = 1e-8;
pub const RENORM_HIGH: f64 = 1e8;

type ElementFn = Arc<dyn Fn(usize) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum SequenceKind {
    List(Vec<Complex64>),
    /// `b_n = base * ratio^n` for `n = 1..=count`; the first element is
    /// `base * ratio`.
    Geometric {
        base: Complex64,
        ratio: Complex64,
        count: usize,
    },
    Constant {
        value: Complex64,
        count: usize,
    },
    Custom {
        f: ElementFn,
        count: usize,
    },
}

/// A finite family of nonzero elements `b_1, ..., b_count`, optionally
/// tagged with a sector that every element must inhabit.
#[derive(Clone)]
pub struct ElementSequence {
    kind: SequenceKind,
    sector: Option<Sector>,
}

impl fmt::Debug for ElementSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SequenceKind::List(v) => write!(f, "ElementSequence::List(len={})", v.len()),
            SequenceKind::Geometric { base, ratio, count } => {
                write!(
                    f,
                    "ElementSequence::Geometric(b0={base}, r={ratio}, count={count})"
                )
            }
            SequenceKind::Constant { value, count } => {
                write!(f, "ElementSequence::Constant(b={value}, count={count})")
            }
            SequenceKind::Custom { count, .. } => {
                write!(f, "ElementSequence::Custom(count={count})")
            }
        }
    }
}

impl ElementSequence {
    pub fn from_elements(elements: Vec<Complex64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Domain("element list must be non-empty".into()));
        }
        if elements.contains(&ZERO) {
            return Err(Error::InvalidElement);
        }
        Ok(Self {
            kind: SequenceKind::List(elements),
            sector: None,
        })
    }

    /// Elements `b_n = base * ratio^n`, `n = 1..=count`.
    pub fn geometric(base: Complex64, ratio: Complex64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Domain("count must be positive".into()));
        }
        if base == ZERO || ratio == ZERO {
            return Err(Error::InvalidElement);
        }
        Ok(Self {
            kind: SequenceKind::Geometric { base, ratio, count },
            sector: None,
        })
    }

    pub fn constant(value: Complex64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Domain("count must be positive".into()));
        }
        if value == ZERO {
            return Err(Error::InvalidElement);
        }
        Ok(Self {
            kind: SequenceKind::Constant { value, count },
            sector: None,
        })
    }

    /// A callback family; every element is materialized once here to verify
    /// it is nonzero.
    pub fn from_fn<F>(f: F, count: usize) -> Result<Self>
    where
        F: Fn(usize) -> Complex64 + Send + Sync + 'static,
    {
        if count == 0 {
            return Err(Error::Domain("count must be positive".into()));
        }
        let f: ElementFn = Arc::new(f);
        if (1..=count).any(|n| f(n) == ZERO) {
            return Err(Error::InvalidElement);
        }
        Ok(Self {
            kind: SequenceKind::Custom { f, count },
            sector: None,
        })
    }

    /// Attaches a declared sector, verifying every materialized element.
    pub fn with_declared_sector(mut self, sector: Sector) -> Result<Self> {
        for n in 1..=self.len() {
            let b = self.element(n)?;
            if !sector.contains_value(b) {
                return Err(Error::Domain(format!(
                    "element {n} = {b} lies outside the declared sector of half-angle {}",
                    sector.half_angle()
                )));
            }
        }
        self.sector = Some(sector);
        Ok(self)
    }

    pub fn declared_sector(&self) -> Option<&Sector> {
        self.sector.as_ref()
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            SequenceKind::List(v) => v.len(),
            SequenceKind::Geometric { count, .. }
            | SequenceKind::Constant { count, .. }
            | SequenceKind::Custom { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 1-indexed element access.
    pub fn element(&self, n: usize) -> Result<Complex64> {
        if n == 0 || n > self.len() {
            return Err(Error::OutOfRange {
                requested: n,
                len: self.len(),
            });
        }
        Ok(match &self.kind {
            SequenceKind::List(v) => v[n - 1],
            SequenceKind::Geometric { base, ratio, .. } => base * ratio.powi(n as i32),
            SequenceKind::Constant { value, .. } => *value,
            SequenceKind::Custom { f, .. } => f(n),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Complex64> + '_ {
        (1..=self.len()).map(move |n| self.element(n).expect("index in range"))
    }

    /// `sup_k |b_{2k} / b_{2k-1}|` over adjacent pairs. Generator families
    /// supply the closed-form value; lists are scanned.
    pub fn ratio_sup_even_over_odd(&self) -> Result<f64> {
        self.pair_ratio_sup(true)
    }

    /// `sup_k |b_{2k-1} / b_{2k}|` over adjacent pairs.
    pub fn ratio_sup_odd_over_even(&self) -> Result<f64> {
        self.pair_ratio_sup(false)
    }

    fn pair_ratio_sup(&self, even_over_odd: bool) -> Result<f64> {
        if self.len() < 2 {
            return Err(Error::Domain(
                "at least one adjacent element pair is required".into(),
            ));
        }
        match &self.kind {
            // |b_{n+1}/b_n| = |ratio| for every n, so both sups are exact.
            SequenceKind::Geometric { ratio, .. } => Ok(if even_over_odd {
                ratio.norm()
            } else {
                ratio.norm().recip()
            }),
            SequenceKind::Constant { .. } => Ok(1.0),
            _ => {
                let mut sup = 0.0f64;
                for k in 1..=self.len() / 2 {
                    let odd = self.element(2 * k - 1)?.norm();
                    let even = self.element(2 * k)?.norm();
                    let ratio = if even_over_odd {
                        even / odd
                    } else {
                        odd / even
                    };
                    sup = sup.max(ratio);
                }
                Ok(sup)
            }
        }
    }

    /// Largest `|Arg b_n|` over the family; the tightest sector half-angle
    /// containing the data.
    pub fn max_abs_arg(&self) -> f64 {
        self.iter().map(|b| b.arg().abs()).fold(0.0, f64::max)
    }
}

/// Rolling Wallis-Euler state after `index` elements.
///
/// Carries the current and two previous numerator/denominator iterates at a
/// shared rescaling, plus the cumulative positive `scale` such that the true
/// iterates are `scale` times the stored ones. Internally the scale is kept
/// as a binary exponent, so it stays exact however far the true iterates
/// grow or shrink. The determinant identities hold in rescaled form:
///
/// * `A_n B_{n-1} - A_{n-1} B_n = (-1)^{n-1} / scale^2`
/// * `A_n B_{n-2} - A_{n-2} B_n = (-1)^n b_n / scale^2`
///
/// Closed-form evaluation through the state is accurate while the true
/// iterates fit the working precision; once `scale` dwarfs the rescaling
/// band the stored matrix is numerically singular and inverse-style
/// identities lose digits accordingly.
#[derive(Debug, Clone, Copy)]
pub struct ConvergentState {
    num_cur: Complex64,
    num_prev: Complex64,
    num_prev2: Complex64,
    den_cur: Complex64,
    den_prev: Complex64,
    den_prev2: Complex64,
    last_element: Complex64,
    index: usize,
    scale_log2: f64,
}

impl ConvergentState {
    /// State after the first element: `A_0 = 0, A_1 = 1, B_0 = 1, B_1 = b_1`.
    pub fn start(first: Complex64) -> Result<Self> {
        if first == ZERO {
            return Err(Error::InvalidElement);
        }
        Ok(Self {
            num_cur: ONE,
            num_prev: ZERO,
            num_prev2: ONE, // A_{-1}
            den_cur: first,
            den_prev: ONE,
            den_prev2: ZERO, // B_{-1}
            last_element: first,
            index: 1,
            scale_log2: 0.0,
        })
    }

    /// One Wallis-Euler step: `A_n = b A_{n-1} + A_{n-2}` and likewise for B.
    pub fn step(&self, element: Complex64) -> Result<Self> {
        if element == ZERO {
            return Err(Error::InvalidElement);
        }
        let mut next = Self {
            num_cur: element * self.num_cur + self.num_prev,
            num_prev: self.num_cur,
            num_prev2: self.num_prev,
            den_cur: element * self.den_cur + self.den_prev,
            den_prev: self.den_cur,
            den_prev2: self.den_prev,
            last_element: element,
            index: self.index + 1,
            scale_log2: self.scale_log2,
        };
        next.renormalize();
        Ok(next)
    }

    // Joint rescaling by one positive factor preserves every observable
    // ratio exactly; it fires when the largest of the four live entries
    // leaves [RENORM_LOW, RENORM_HIGH]. The factor is a power of two, so
    // the division itself is exact.
    fn renormalize(&mut self) {
        let m = self
            .num_cur
            .norm()
            .max(self.num_prev.norm())
            .max(self.den_cur.norm())
            .max(self.den_prev.norm());
        if m.is_finite() && m > 0.0 && !(RENORM_LOW..=RENORM_HIGH).contains(&m) {
            let exponent = crate::projective::pow2_exponent(m);
            let s = exponent.exp2();
            self.num_cur /= s;
            self.num_prev /= s;
            self.num_prev2 /= s;
            self.den_cur /= s;
            self.den_prev /= s;
            self.den_prev2 /= s;
            self.scale_log2 += exponent;
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Cumulative rescale factor; the true iterates are `scale()` times the
    /// stored entries. May round to infinity or zero when the true
    /// magnitudes leave the f64 range, while the internal exponent stays
    /// exact.
    pub fn scale(&self) -> f64 {
        self.scale_log2.exp2()
    }

    fn inv_scale_sq(&self) -> f64 {
        (-2.0 * self.scale_log2).exp2()
    }

    /// Rescaled `A_n, A_{n-1}, B_n, B_{n-1}`.
    pub fn entries(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        (self.num_cur, self.num_prev, self.den_cur, self.den_prev)
    }

    /// `f_n = A_n / B_n`.
    pub fn convergent(&self) -> ExtendedComplex {
        ExtendedComplex::raw(self.num_cur, self.den_cur)
    }

    /// `f_n(w) = (A_n + w A_{n-1}) / (B_n + w B_{n-1})`.
    pub fn convergent_at(&self, w: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::raw(
            self.num_cur * w.den() + self.num_prev * w.num(),
            self.den_cur * w.den() + self.den_prev * w.num(),
        )
    }

    /// Closed form of the tail value at this depth:
    /// `t_n(w) = (A_n - w B_n) / (-A_{n-1} + w B_{n-1})`.
    pub fn tail_at(&self, w: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::raw(
            self.num_cur * w.den() - self.den_cur * w.num(),
            -self.num_prev * w.den() + self.den_prev * w.num(),
        )
    }

    /// Closed form of the reverse value one past this depth:
    /// `r_{n+1}(w) = (B_{n-1} + w A_{n-1}) / (B_n + w A_n)`.
    pub fn reverse_at(&self, w: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::raw(
            self.den_prev * w.den() + self.num_prev * w.num(),
            self.den_cur * w.den() + self.num_cur * w.num(),
        )
    }

    /// Normalized residual of `A_n B_{n-1} - A_{n-1} B_n = (-1)^{n-1}/scale^2`,
    /// measured against the magnitude of the products entering the
    /// cancellation.
    pub fn determinant_residual(&self) -> f64 {
        let lhs = self.num_cur * self.den_prev - self.num_prev * self.den_cur;
        let sign = if (self.index - 1).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        let target = Complex64::new(sign * self.inv_scale_sq(), 0.0);
        normalized_residual(
            lhs,
            target,
            (self.num_cur * self.den_prev).norm(),
            (self.num_prev * self.den_cur).norm(),
        )
    }

    /// Normalized residual of `A_n B_{n-2} - A_{n-2} B_n = (-1)^n b_n/scale^2`.
    pub fn skip_determinant_residual(&self) -> f64 {
        let lhs = self.num_cur * self.den_prev2 - self.num_prev2 * self.den_cur;
        let sign = if self.index.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        let target = self.last_element * (sign * self.inv_scale_sq());
        normalized_residual(
            lhs,
            target,
            (self.num_cur * self.den_prev2).norm(),
            (self.num_prev2 * self.den_cur).norm(),
        )
    }
}

fn normalized_residual(lhs: Complex64, target: Complex64, mag_a: f64, mag_b: f64) -> f64 {
    let denom = mag_a.max(mag_b).max(target.norm()).max(f64::MIN_POSITIVE);
    (lhs - target).norm() / denom
}

fn state_at(seq: &ElementSequence, n: usize) -> Result<ConvergentState> {
    debug_assert!(n >= 1);
    let mut state = ConvergentState::start(seq.element(1)?)?;
    for k in 2..=n {
        state = state.step(seq.element(k)?)?;
    }
    Ok(state)
}

fn check_depth(seq: &ElementSequence, n: usize) -> Result<()> {
    if n > seq.len() {
        return Err(Error::OutOfRange {
            requested: n,
            len: seq.len(),
        });
    }
    Ok(())
}

/// One projective step `v -> 1/(b + v)` of the recursion shared by tail and
/// reverse sequences; poles propagate as infinity.
pub(crate) fn step_point(element: Complex64, v: &ExtendedComplex) -> ExtendedComplex {
    ExtendedComplex::raw(v.den(), element * v.den() + v.num())
}

/// `f_n = A_n / B_n`; `f_0 = 0` by convention.
pub fn convergent(seq: &ElementSequence, n: usize) -> Result<ExtendedComplex> {
    check_depth(seq, n)?;
    if n == 0 {
        return Ok(ExtendedComplex::zero());
    }
    Ok(state_at(seq, n)?.convergent())
}

/// `f_n(w)`; equals the composed Moebius action of the first `n` element
/// steps applied to `w`.
pub fn convergent_at(
    seq: &ElementSequence,
    n: usize,
    w: &ExtendedComplex,
) -> Result<ExtendedComplex> {
    check_depth(seq, n)?;
    if n == 0 {
        return Ok(*w);
    }
    Ok(state_at(seq, n)?.convergent_at(w))
}

/// Backward recursion `t_{k-1} = 1/(b_k + t_k)` from the user-supplied seed
/// `t_n`, returning `[t_n, t_{n-1}, ..., t_0]`. The final entry is `f_n(seed)`.
pub fn tail_sequence(
    seq: &ElementSequence,
    n: usize,
    seed: ExtendedComplex,
) -> Result<Vec<ExtendedComplex>> {
    check_depth(seq, n)?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(seed);
    let mut tail = seed;
    for k in (1..=n).rev() {
        tail = step_point(seq.element(k)?, &tail);
        values.push(tail);
    }
    Ok(values)
}

/// Forward recursion `r_{k+1} = 1/(b_k + r_k)` from `r_1 = seed`,
/// returning `r_{n+1}`.
pub fn reverse_sequence(
    seq: &ElementSequence,
    n: usize,
    seed: ExtendedComplex,
) -> Result<ExtendedComplex> {
    check_depth(seq, n)?;
    let mut value = seed;
    for k in 1..=n {
        value = step_point(seq.element(k)?, &value);
    }
    Ok(value)
}

/// Even/odd split of the numerator and denominator iterates at the end of a
/// run, with the parity-limit detection verdict.
#[derive(Debug, Clone, Copy)]
pub struct EvenOddLimits {
    pub num_even: Complex64,
    pub num_odd: Complex64,
    pub den_even: Complex64,
    pub den_odd: Complex64,
    pub f_even: ExtendedComplex,
    pub f_odd: ExtendedComplex,
    pub iterations_used: usize,
    pub converged: bool,
    /// Shared rescale factor of the reported entries.
    pub scale: f64,
}

impl EvenOddLimits {
    /// Normalized residual of `A_odd B_even - A_even B_odd = 1/scale^2`.
    pub fn parity_determinant_residual(&self) -> f64 {
        let lhs = self.num_odd * self.den_even - self.num_even * self.den_odd;
        let target = Complex64::new(1.0 / (self.scale * self.scale), 0.0);
        normalized_residual(
            lhs,
            target,
            (self.num_odd * self.den_even).norm(),
            (self.num_even * self.den_odd).norm(),
        )
    }
}

// Three quiet steps are required in each parity class; steps alternate
// classes, so six consecutive quiet steps overall.
const QUIET_STEPS_REQUIRED: usize = 6;

/// Iterates the recurrence and watches the even- and odd-indexed numerator
/// and denominator iterates. `converged` is set once both rescaled parity
/// changes stay below `tol` for three consecutive parity steps; otherwise
/// partial data is returned with `converged = false` (never an error).
pub fn even_odd_limits(seq: &ElementSequence, tol: f64, max_terms: usize) -> Result<EvenOddLimits> {
    if max_terms == 0 {
        return Err(Error::Domain("max_terms must be positive".into()));
    }
    let limit = max_terms.min(seq.len());
    let mut state = ConvergentState::start(seq.element(1)?)?;
    let mut quiet_run = 0usize;
    let mut converged = false;
    for k in 2..=limit {
        state = state.step(seq.element(k)?)?;
        // change across one parity step, at the shared current rescaling
        let delta_num = (state.num_cur - state.num_prev2).norm();
        let delta_den = (state.den_cur - state.den_prev2).norm();
        if delta_num < tol && delta_den < tol {
            quiet_run += 1;
        } else {
            quiet_run = 0;
        }
        if quiet_run >= QUIET_STEPS_REQUIRED {
            converged = true;
            break;
        }
    }
    // The last two iterates have opposite parity and share one rescaling.
    let (num_even, den_even, num_odd, den_odd) = if state.index.is_multiple_of(2) {
        (state.num_cur, state.den_cur, state.num_prev, state.den_prev)
    } else {
        (state.num_prev, state.den_prev, state.num_cur, state.den_cur)
    };
    Ok(EvenOddLimits {
        num_even,
        num_odd,
        den_even,
        den_odd,
        f_even: ExtendedComplex::raw(num_even, den_even),
        f_odd: ExtendedComplex::raw(num_odd, den_odd),
        iterations_used: state.index,
        converged,
        scale: state.scale(),
    })
}

/// For a fraction with strictly positive real elements and a positive scale
/// parameter `w`, returns the even convergent of `K(1/(w b_k))` at depth
/// `2 * pairs` together with the pairwise sum that bounds it:
///
/// `sum_{i=1..pairs} w b_{2i} / (1 + w^2 b_{2i-1} b_{2i})`
///
/// The bounded side pairs each even-indexed element with the odd-indexed
/// element before it; this indexing is pinned by the brute-force oracle in
/// the test suite (the convergent increments telescope as
/// `f_{2i} - f_{2i-2} = w b_{2i} / (B_{2i} B_{2i-2})`).
pub fn even_convergent_sum_bound(
    seq: &ElementSequence,
    w: f64,
    pairs: usize,
) -> Result<(f64, f64)> {
    check_depth(seq, 2 * pairs)?;
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::Domain(format!(
            "scale parameter must be strictly positive, got {w}"
        )));
    }
    let mut elements = Vec::with_capacity(2 * pairs);
    for k in 1..=2 * pairs {
        let b = seq.element(k)?;
        if b.im != 0.0 || b.re <= 0.0 {
            return Err(Error::Domain(format!(
                "element {k} = {b} must be real and strictly positive"
            )));
        }
        elements.push(b.re);
    }
    if pairs == 0 {
        return Ok((0.0, 0.0));
    }

    let scaled = ElementSequence::from_elements(
        elements
            .iter()
            .map(|b| Complex64::new(w * b, 0.0))
            .collect(),
    )?;
    let lhs = convergent(&scaled, 2 * pairs)?
        .to_complex()
        .expect("positive elements keep denominators positive")
        .re;

    let mut rhs = 0.0;
    for i in 1..=pairs {
        let odd = elements[2 * i - 2];
        let even = elements[2 * i - 1];
        rhs += w * even / (1.0 + w * w * odd * even);
    }
    Ok((lhs, rhs))
}
