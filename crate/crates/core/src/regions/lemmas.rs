//! Inequality oracles for the two-step Moebius estimates behind the disk
//! theorems, the half-plane/disk equivalence, and the boundary-ray
//! counterexample showing the origin-disk bound cannot reach pi/4.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::projective::Sector;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Both sides of the two-step lower bound
/// `1/|q + 1/(p+z)| <= 1/||q| e^{i theta} + e^{-i theta}/(|p| + C)|`.
#[derive(Debug, Clone, Copy)]
pub struct TwoStepBound {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// One application of the origin-disk step:
/// `|1/(q + 1/(p+z))| <= C` whenever `C^2 >= |p| / (|q| cos 2 theta)`.
#[derive(Debug, Clone, Copy)]
pub struct OriginStepBound {
    pub value: f64,
    pub holds: bool,
}

/// Predicates of the equivalence `|w - K| <= K  <=>  Re(1/w) >= 1/(2K)`.
#[derive(Debug, Clone, Copy)]
pub struct HalfplaneDiskCheck {
    pub in_disk: bool,
    pub in_halfplane: bool,
    /// `w = 0` sits on the boundary of every such disk; both predicates are
    /// declared true there by the boundary-limit convention, and flagged.
    pub at_origin: bool,
}

/// Squared magnitude of the two-step denominator on the pi/4 ray, by
/// direct complex arithmetic and by closed form, against the `1/|z|^2`
/// threshold it provably drops below.
#[derive(Debug, Clone, Copy)]
pub struct CounterexampleEval {
    pub lhs_squared: f64,
    pub lhs_squared_closed_form: f64,
    pub threshold: f64,
    pub violates: bool,
}

fn validate_lemma_inputs(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    theta: f64,
    c: f64,
) -> Result<Sector> {
    if !theta.is_finite() || theta < 0.0 {
        return Err(Error::Domain(format!(
            "sector half-angle must be nonnegative, got {theta}"
        )));
    }
    if theta >= FRAC_PI_4 {
        return Err(Error::SectorTooWide { half_angle: theta });
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain(format!("constant must be positive, got {c}")));
    }
    if p == ZERO || q == ZERO {
        return Err(Error::InvalidElement);
    }
    let sector = Sector::new(theta)?;
    for (name, v) in [("p", p), ("q", q), ("z", z)] {
        if !sector.contains_value(v) {
            return Err(Error::Domain(format!(
                "{name} = {v} lies outside the sector of half-angle {theta}"
            )));
        }
    }
    if z.norm() > c * (1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds the disk radius {c}",
            z.norm()
        )));
    }
    Ok(sector)
}

/// Evaluates both sides of the two-step lower bound; `holds` allows an
/// absolute slack above the right-hand side.
pub fn lemma_two_step_lower_bound(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    theta: f64,
    c: f64,
    slack: f64,
) -> Result<TwoStepBound> {
    validate_lemma_inputs(p, q, z, theta, c)?;
    let lhs = (q + (p + z).inv()).norm().recip();
    let rotated = Complex64::from_polar(q.norm(), theta)
        + Complex64::from_polar((p.norm() + c).recip(), -theta);
    let rhs = rotated.norm().recip();
    Ok(TwoStepBound {
        lhs,
        rhs,
        holds: lhs <= rhs + slack,
    })
}

/// Evaluates one origin-disk step. The radius must satisfy
/// `C^2 >= |p| / (|q| cos 2 theta)`; anything smaller is an invalid
/// certificate request rather than a counterexample.
pub fn lemma_origin_disk_step(
    p: Complex64,
    q: Complex64,
    z: Complex64,
    theta: f64,
    c: f64,
    slack: f64,
) -> Result<OriginStepBound> {
    validate_lemma_inputs(p, q, z, theta, c)?;
    let threshold = p.norm() / (q.norm() * (2.0 * theta).cos());
    if c * c < threshold * (1.0 - 1e-12) {
        return Err(Error::InvalidCertificateRequest(format!(
            "C^2 = {} is below the step threshold {threshold}",
            c * c
        )));
    }
    let value = (q + (p + z).inv()).norm().recip();
    Ok(OriginStepBound {
        value,
        holds: value <= c + slack,
    })
}

/// Checks `|w - K| <= K` against `Re(1/w) >= 1/(2K)`; the two predicates
/// agree everywhere away from the boundary.
pub fn halfplane_disk_equivalence(w: Complex64, k: f64) -> Result<HalfplaneDiskCheck> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!(
            "disk radius must be positive, got {k}"
        )));
    }
    if w == ZERO {
        return Ok(HalfplaneDiskCheck {
            in_disk: true,
            in_halfplane: true,
            at_origin: true,
        });
    }
    Ok(HalfplaneDiskCheck {
        in_disk: (w - Complex64::new(k, 0.0)).norm() <= k,
        in_halfplane: w.inv().re >= (2.0 * k).recip(),
        at_origin: false,
    })
}

/// Evaluates the boundary-ray configuration `p = q = t e^{i pi/4}`,
/// `z = t^{-1/3} e^{i pi/4}` for `t` in `(0, 1/2]`. The squared two-step
/// denominator `|q + 1/(p+z)|^2` falls below `1/|z|^2 = t^{2/3}` for every
/// admissible `t`, so `1/|q + 1/(p+z)|` escapes the disk of radius `|z|`:
/// origin-centered disks stop working at half-angle pi/4.
pub fn counterexample_eval(t: f64) -> Result<CounterexampleEval> {
    if !(t.is_finite() && t > 0.0 && t <= 0.5) {
        return Err(Error::Domain(format!(
            "parameter must lie in (0, 1/2], got {t}"
        )));
    }
    let ray = Complex64::from_polar(1.0, FRAC_PI_4);
    let p = ray * t;
    let q = p;
    let z = ray * t.powf(-1.0 / 3.0);
    let lhs_squared = (q + (p + z).inv()).norm_sqr();

    let t23 = t.powf(2.0 / 3.0);
    let t43 = t.powf(4.0 / 3.0);
    let lhs_squared_closed_form = t * t + t23 / ((t43 + 1.0) * (t43 + 1.0));

    Ok(CounterexampleEval {
        lhs_squared,
        lhs_squared_closed_form,
        threshold: t23,
        violates: lhs_squared < t23,
    })
}

/// Uniform sweep of [`counterexample_eval`] over `[t_min, t_max]`.
pub fn counterexample_sweep(
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<Vec<(f64, CounterexampleEval)>> {
    if !(t_min.is_finite() && t_max.is_finite() && t_min > 0.0 && t_min <= t_max && t_max <= 0.5) {
        return Err(Error::Domain(format!(
            "sweep range must satisfy 0 < t_min <= t_max <= 1/2, got [{t_min}, {t_max}]"
        )));
    }
    if steps == 0 {
        return Err(Error::Domain("sweep needs at least one step".into()));
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = if steps == 1 {
            t_min
        } else {
            t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64
        };
        rows.push((t, counterexample_eval(t)?));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::FRAC_PI_8;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn two_step_bound_hand_values() {
        // p = q = 1, z = 0: 1/2 against 1/|1 + 1/2| = 2/3
        let b = lemma_two_step_lower_bound(ONE, ONE, ZERO, 0.0, 1.0, 0.0).unwrap();
        assert!((b.lhs - 0.5).abs() < 1e-15);
        assert!((b.rhs - 2.0 / 3.0).abs() < 1e-15);
        assert!(b.holds);

        // p = q = z = 1 saturates at theta = 0, |z| = C
        let b = lemma_two_step_lower_bound(ONE, ONE, ONE, 0.0, 1.0, 1e-12).unwrap();
        assert!((b.lhs - 2.0 / 3.0).abs() < 1e-15);
        assert!((b.rhs - 2.0 / 3.0).abs() < 1e-15);
        assert!(b.holds);
    }

    #[test]
    fn two_step_bound_randomized_oracle() {
        let mut rng = StdRng::seed_from_u64(29);
        let mut checked = 0;
        while checked < 10_000 {
            let theta = rng.random_range(0.0..FRAC_PI_4 - 0.01);
            let mut sample = || {
                Complex64::from_polar(
                    10f64.powf(rng.random_range(-2.0..=2.0)),
                    rng.random_range(-theta..=theta),
                )
            };
            let (p, q) = (sample(), sample());
            let c = rng.random_range(0.1..10.0);
            let z =
                Complex64::from_polar(rng.random_range(0.0..=c), rng.random_range(-theta..=theta));
            let b = lemma_two_step_lower_bound(p, q, z, theta, c, 1e-10).unwrap();
            assert!(b.holds, "violated at p={p} q={q} z={z} theta={theta} C={c}");
            checked += 1;
        }
    }

    #[test]
    fn origin_step_hand_values() {
        let b = lemma_origin_disk_step(ONE, ONE, ONE, 0.0, 1.0, 0.0).unwrap();
        assert!((b.value - 2.0 / 3.0).abs() < 1e-15);
        assert!(b.holds);

        // p = q = e^{i pi/8} at theta = pi/8 with the minimal admissible C
        let e = Complex64::from_polar(1.0, FRAC_PI_8);
        let c = (1.0 / (2.0 * FRAC_PI_8).cos()).sqrt();
        let b = lemma_origin_disk_step(e, e, ZERO, FRAC_PI_8, c, 1e-12).unwrap();
        // value = 1/|q + 1/p| = 1/(2 cos(pi/8))
        assert!((b.value - (2.0 * FRAC_PI_8.cos()).recip()).abs() < 1e-12);
        assert!(b.holds);
    }

    #[test]
    fn origin_step_rejects_undersized_constants() {
        let err = lemma_origin_disk_step(cx(4.0, 0.0), ONE, ZERO, 0.0, 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidCertificateRequest(_)));
    }

    #[test]
    fn lemma_inputs_are_gated() {
        // z beyond the disk radius
        let err = lemma_two_step_lower_bound(ONE, ONE, cx(2.0, 0.0), 0.0, 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        // q outside the sector
        let err = lemma_two_step_lower_bound(ONE, cx(0.0, 1.0), ZERO, 0.1, 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        // the pi/4 angle is rejected with the dedicated code
        let err = lemma_two_step_lower_bound(ONE, ONE, ZERO, FRAC_PI_4, 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::SectorTooWide { .. }));
        // zero elements are invalid
        let err = lemma_origin_disk_step(ZERO, ONE, ZERO, 0.0, 1.0, 0.0).unwrap_err();
        assert_eq!(err, Error::InvalidElement);
    }

    #[test]
    fn origin_step_randomized_oracle() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10_000 {
            let theta = rng.random_range(0.0..FRAC_PI_4 - 0.01);
            let mut sample = || {
                Complex64::from_polar(
                    10f64.powf(rng.random_range(-2.0..=2.0)),
                    rng.random_range(-theta..=theta),
                )
            };
            let (p, q) = (sample(), sample());
            let c =
                (p.norm() / (q.norm() * (2.0 * theta).cos())).sqrt() * rng.random_range(1.0..3.0);
            let z =
                Complex64::from_polar(rng.random_range(0.0..=c), rng.random_range(-theta..=theta));
            let b = lemma_origin_disk_step(p, q, z, theta, c, 1e-10).unwrap();
            assert!(b.holds, "violated at p={p} q={q} z={z} theta={theta} C={c}");
        }
    }

    #[test]
    fn halfplane_disk_agreement_points() {
        let k = 2.5;
        let on_center = halfplane_disk_equivalence(cx(k, 0.0), k).unwrap();
        assert!(on_center.in_disk && on_center.in_halfplane);
        let outside = halfplane_disk_equivalence(cx(3.0 * k, 0.0), k).unwrap();
        assert!(!outside.in_disk && !outside.in_halfplane);
        let origin = halfplane_disk_equivalence(ZERO, k).unwrap();
        assert!(origin.at_origin && origin.in_disk && origin.in_halfplane);
    }

    #[test]
    fn counterexample_at_one_half() {
        let eval = counterexample_eval(0.5).unwrap();
        assert!((eval.lhs_squared - 0.572860).abs() < 1e-5);
        assert!((eval.threshold - 0.629961).abs() < 1e-5);
        assert!(eval.violates);
        let rel =
            (eval.lhs_squared - eval.lhs_squared_closed_form).abs() / eval.lhs_squared_closed_form;
        assert!(rel < 1e-12);
        // the two-step value escapes the |z| disk
        let value = eval.lhs_squared.sqrt().recip();
        assert!((value - 1.321220).abs() < 1e-5);
        assert!(value >= 0.5f64.powf(-1.0 / 3.0));
    }

    #[test]
    fn counterexample_domain_gate() {
        assert!(counterexample_eval(0.0).is_err());
        assert!(counterexample_eval(0.6).is_err());
        assert!(counterexample_sweep(0.01, 0.6, 10).is_err());
        assert!(counterexample_sweep(0.1, 0.2, 0).is_err());
    }

    #[test]
    fn counterexample_sweep_violates_everywhere() {
        let rows = counterexample_sweep(0.01, 0.5, 50).unwrap();
        assert_eq!(rows.len(), 50);
        assert!(rows.iter().all(|(_, e)| e.violates));
    }
}
