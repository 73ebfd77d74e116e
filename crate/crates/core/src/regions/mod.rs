//! Disk value regions for even convergents, odd reverse sequences, and
//! even tails, with admissible-constant computation and membership
//! certificates.
//!
//! Two disk families are supported: origin-centered disks, valid for
//! element sectors with half-angle strictly below pi/4, and disks through
//! the origin centered on the positive real axis, valid for all elements
//! with positive real part (and, via a moduli bound, for sectors up to
//! pi/2).

mod lemmas;
mod sweep;

pub use lemmas::{
    counterexample_eval, counterexample_sweep, halfplane_disk_equivalence, lemma_origin_disk_step,
    lemma_two_step_lower_bound, CounterexampleEval, HalfplaneDiskCheck, OriginStepBound,
    TwoStepBound,
};
pub use sweep::{
    origin_disk_sweep, shifted_disk_sweep, SweepConfig, SweepReport, DEFAULT_SWEEP_SEED,
};

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

use crate::engine::{step_point, ConvergentState, ElementSequence};
use crate::error::{Error, Result};
use crate::projective::{ExtendedComplex, Sector};

/// Default relative slack for disk and sector membership. The theorems are
/// closed-region statements, so boundary cases must pass.
pub const DEFAULT_SLACK: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which disk theorem a constant or certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    OriginDisk,
    ShiftedDisk,
}

/// Which value family a certificate quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateTarget {
    EvenConvergents,
    OddReverse,
    EvenTails,
}

/// The closed disk `|z| <= radius` centered at the origin.
#[derive(Debug, Clone, Copy)]
pub struct OriginDisk {
    radius: f64,
}

impl OriginDisk {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Domain(format!(
                "disk radius must be positive, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        z.norm() <= self.radius * (1.0 + slack)
    }
}

/// The closed disk `|z - radius| <= radius`: centered at the real point
/// `radius` and passing through the origin. For `z != 0` membership is
/// equivalent to `Re(1/z) >= 1/(2 radius)`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedDisk {
    radius: f64,
}

impl ShiftedDisk {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Domain(format!(
                "disk radius must be positive, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(self.radius, 0.0)
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        (z - self.center()).norm() <= self.radius * (1.0 + slack)
    }
}

/// Either disk family, for certificate requests.
#[derive(Debug, Clone, Copy)]
pub enum Disk {
    Origin(OriginDisk),
    Shifted(ShiftedDisk),
}

impl Disk {
    pub fn origin(radius: f64) -> Result<Self> {
        Ok(Disk::Origin(OriginDisk::new(radius)?))
    }

    pub fn shifted(radius: f64) -> Result<Self> {
        Ok(Disk::Shifted(ShiftedDisk::new(radius)?))
    }

    pub fn radius(&self) -> f64 {
        match self {
            Disk::Origin(d) => d.radius(),
            Disk::Shifted(d) => d.radius(),
        }
    }

    pub fn center(&self) -> Complex64 {
        match self {
            Disk::Origin(_) => ZERO,
            Disk::Shifted(d) => d.center(),
        }
    }

    pub fn theorem(&self) -> Theorem {
        match self {
            Disk::Origin(_) => Theorem::OriginDisk,
            Disk::Shifted(_) => Theorem::ShiftedDisk,
        }
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        match self {
            Disk::Origin(d) => d.contains(z, slack),
            Disk::Shifted(d) => d.contains(z, slack),
        }
    }

    pub fn contains_point(&self, z: &ExtendedComplex, slack: f64) -> bool {
        match z.to_complex() {
            Some(value) => self.contains(value, slack),
            None => false,
        }
    }

    /// Signed membership margin relative to the radius: nonpositive inside,
    /// positive outside.
    pub fn margin(&self, z: Complex64) -> f64 {
        match self {
            Disk::Origin(d) => (z.norm() - d.radius()) / d.radius(),
            Disk::Shifted(d) => ((z - d.center()).norm() - d.radius()) / d.radius(),
        }
    }
}

fn validate_pair_lists(ps: &[Complex64], qs: &[Complex64]) -> Result<()> {
    if ps.is_empty() || qs.is_empty() {
        return Err(Error::Domain("pair lists must be non-empty".into()));
    }
    if ps.len() != qs.len() {
        return Err(Error::Domain(format!(
            "pair lists must have equal length, got {} and {}",
            ps.len(),
            qs.len()
        )));
    }
    if ps.iter().chain(qs.iter()).any(|v| *v == ZERO) {
        return Err(Error::InvalidElement);
    }
    Ok(())
}

fn origin_constant_with_sup(ps: &[Complex64], qs: &[Complex64], theta: f64) -> Result<(f64, f64)> {
    if !theta.is_finite() || theta < 0.0 {
        return Err(Error::Domain(format!(
            "sector half-angle must be a nonnegative angle, got {theta}"
        )));
    }
    if theta >= FRAC_PI_4 {
        return Err(Error::SectorTooWide { half_angle: theta });
    }
    validate_pair_lists(ps, qs)?;
    let sector = Sector::new(theta)?;
    for (k, v) in ps.iter().chain(qs.iter()).enumerate() {
        if !sector.contains_value(*v) {
            return Err(Error::Domain(format!(
                "pair entry {k} = {v} lies outside the sector of half-angle {theta}"
            )));
        }
    }
    let sup = ps
        .iter()
        .zip(qs)
        .map(|(p, q)| p.norm() / q.norm())
        .fold(0.0f64, f64::max);
    Ok(((sup / (2.0 * theta).cos()).sqrt(), sup))
}

fn shifted_constant_with_sup(ps: &[Complex64], qs: &[Complex64]) -> Result<(f64, f64)> {
    validate_pair_lists(ps, qs)?;
    for (k, v) in ps.iter().chain(qs.iter()).enumerate() {
        if v.re <= 0.0 {
            return Err(Error::Domain(format!(
                "pair entry {k} = {v} must have strictly positive real part"
            )));
        }
    }
    let sup = ps
        .iter()
        .zip(qs)
        .map(|(p, q)| (q.re * p.inv().re).recip())
        .fold(0.0f64, f64::max);
    Ok(((0.25 * sup).sqrt(), sup))
}

/// Minimal admissible radius for an origin-centered value disk:
/// `C = sqrt(sup_k |p_k/q_k| / cos(2 theta))` with `theta < pi/4`.
pub fn origin_disk_constant(ps: &[Complex64], qs: &[Complex64], theta: f64) -> Result<f64> {
    origin_constant_with_sup(ps, qs, theta).map(|(c, _)| c)
}

/// Minimal admissible radius for a shifted value disk over elements with
/// positive real part: `C = sqrt(sup_k 1/(Re(q_k) Re(1/p_k)) / 4)`.
pub fn shifted_disk_constant(ps: &[Complex64], qs: &[Complex64]) -> Result<f64> {
    shifted_constant_with_sup(ps, qs).map(|(c, _)| c)
}

/// Moduli form of the shifted constant for sector data with half-angle up
/// to pi/2: `C = sqrt(sup_k |p_k/q_k| / (4 cos^2 theta))`. Always at least
/// as large as the positive-real-part form, so it certifies too.
pub fn shifted_disk_constant_from_moduli(
    ps: &[Complex64],
    qs: &[Complex64],
    theta: f64,
) -> Result<f64> {
    let sector = Sector::new(theta)?;
    validate_pair_lists(ps, qs)?;
    for (k, v) in ps.iter().chain(qs.iter()).enumerate() {
        if !sector.contains_value(*v) {
            return Err(Error::Domain(format!(
                "pair entry {k} = {v} lies outside the sector of half-angle {theta}"
            )));
        }
    }
    let sup = ps
        .iter()
        .zip(qs)
        .map(|(p, q)| p.norm() / q.norm())
        .fold(0.0f64, f64::max);
    let cos = theta.cos();
    Ok((0.25 * sup / (cos * cos)).sqrt())
}

/// Minimal admissible disk radius for certifying `target` values of this
/// sequence under `theorem`, with the matching pairing (reverse targets
/// read the elements backwards).
pub fn minimal_disk_constant(
    seq: &ElementSequence,
    theorem: Theorem,
    target: CertificateTarget,
    theta: f64,
) -> Result<f64> {
    let (ps, qs) = match target {
        CertificateTarget::EvenConvergents | CertificateTarget::EvenTails => {
            convergent_pairing(seq)?
        }
        CertificateTarget::OddReverse => reverse_pairing(seq)?,
    };
    match theorem {
        Theorem::OriginDisk => origin_disk_constant(&ps, &qs, theta),
        Theorem::ShiftedDisk => shifted_disk_constant(&ps, &qs),
    }
}

/// Outcome of a membership certificate: every checked value against the
/// requested disk (and sector, on the origin-disk path), with the worst
/// offender recorded.
#[derive(Debug, Clone)]
pub struct RegionCertificate {
    pub theorem: Theorem,
    pub target: CertificateTarget,
    /// Disk radius the certificate ran with.
    pub radius: f64,
    /// The sup quantity the minimal constant was derived from.
    pub sup_quantity: f64,
    pub passed: bool,
    /// Index (in the fraction) of the worst-margin value.
    pub worst_index: usize,
    pub worst_value: Complex64,
    /// Largest membership margin seen; passing means it stayed within slack.
    pub worst_margin: f64,
    pub slack_used: f64,
    /// Number of values checked.
    pub checked: usize,
}

struct MembershipCheck {
    disk: Disk,
    sector: Option<Sector>,
    slack: f64,
    theta: f64,
}

impl MembershipCheck {
    /// Margin of one value: the worse of the relative disk excess and the
    /// absolute argument excess (origin path only).
    fn margin(&self, value: Complex64) -> f64 {
        let mut margin = self.disk.margin(value);
        if self.sector.is_some() && value != ZERO {
            margin = margin.max(value.arg().abs() - self.theta);
        }
        margin
    }
}

struct CertificateRun {
    check: MembershipCheck,
    worst_index: usize,
    worst_value: Complex64,
    worst_margin: f64,
    checked: usize,
}

impl CertificateRun {
    fn new(check: MembershipCheck) -> Self {
        Self {
            check,
            worst_index: 0,
            worst_value: ZERO,
            worst_margin: f64::NEG_INFINITY,
            checked: 0,
        }
    }

    fn observe(&mut self, index: usize, value: &ExtendedComplex) {
        self.checked += 1;
        let (margin, flat) = match value.to_complex() {
            Some(v) => (self.check.margin(v), v),
            None => (f64::INFINITY, Complex64::new(f64::INFINITY, f64::INFINITY)),
        };
        if margin > self.worst_margin {
            self.worst_margin = margin;
            self.worst_index = index;
            self.worst_value = flat;
        }
    }

    fn finish(self, target: CertificateTarget, sup: f64) -> RegionCertificate {
        RegionCertificate {
            theorem: self.check.disk.theorem(),
            target,
            radius: self.check.disk.radius(),
            sup_quantity: sup,
            passed: self.worst_margin <= self.check.slack,
            worst_index: self.worst_index,
            worst_value: self.worst_value,
            worst_margin: self.worst_margin,
            slack_used: self.check.slack,
            checked: self.checked,
        }
    }
}

/// `(ps, qs)` pair lists extracted from a sequence.
type PairLists = (Vec<Complex64>, Vec<Complex64>);

/// Element pairing for convergent and tail certificates: `q_k = b_{2k-1}`,
/// `p_k = b_{2k}`.
fn convergent_pairing(seq: &ElementSequence) -> Result<PairLists> {
    let pairs = seq.len() / 2;
    if pairs == 0 {
        return Err(Error::Domain(
            "certificates need at least two elements".into(),
        ));
    }
    let mut ps = Vec::with_capacity(pairs);
    let mut qs = Vec::with_capacity(pairs);
    for k in 1..=pairs {
        qs.push(seq.element(2 * k - 1)?);
        ps.push(seq.element(2 * k)?);
    }
    Ok((ps, qs))
}

/// Element pairing for reverse certificates, where the fraction is read in
/// reverse order: `q_k = b_{2k}`, `p_k = b_{2k-1}`.
fn reverse_pairing(seq: &ElementSequence) -> Result<PairLists> {
    let (ps, qs) = convergent_pairing(seq)?;
    Ok((qs, ps))
}

fn constant_for(disk: &Disk, ps: &[Complex64], qs: &[Complex64], theta: f64) -> Result<(f64, f64)> {
    match disk {
        Disk::Origin(_) => origin_constant_with_sup(ps, qs, theta),
        Disk::Shifted(_) => shifted_constant_with_sup(ps, qs),
    }
}

fn admit(
    disk: &Disk,
    seq: &ElementSequence,
    seed: &ExtendedComplex,
    theta: f64,
    slack: f64,
    pairing: fn(&ElementSequence) -> Result<PairLists>,
) -> Result<(MembershipCheck, f64)> {
    let (ps, qs) = pairing(seq)?;
    let (c_min, sup) = constant_for(disk, &ps, &qs, theta)?;
    let radius = disk.radius();
    if radius < c_min * (1.0 - 1e-12) {
        return Err(Error::InvalidCertificateRequest(format!(
            "disk radius {radius} is below the minimal admissible constant {c_min}"
        )));
    }
    let sector = match disk {
        Disk::Origin(_) => Some(Sector::new(theta)?.with_arg_tolerance(slack)),
        Disk::Shifted(_) => None,
    };
    if !disk.contains_point(seed, slack) {
        return Err(Error::InvalidCertificateRequest(format!(
            "seed {seed} lies outside the requested disk of radius {radius}"
        )));
    }
    if let Some(s) = &sector {
        if !s.contains(seed) {
            return Err(Error::InvalidCertificateRequest(format!(
                "seed {seed} lies outside the sector of half-angle {theta}"
            )));
        }
    }
    Ok((
        MembershipCheck {
            disk: *disk,
            sector,
            slack,
            theta,
        },
        sup,
    ))
}

/// Certifies `f_{2n}(w)` membership for every even depth up to the sequence
/// length. Precondition failures (undersized radius, inadmissible seed) are
/// reported as [`Error::InvalidCertificateRequest`], not as failed
/// certificates.
pub fn certify_even_convergents(
    seq: &ElementSequence,
    w: &ExtendedComplex,
    disk: &Disk,
    theta: f64,
    slack: f64,
) -> Result<RegionCertificate> {
    let (check, sup) = admit(disk, seq, w, theta, slack, convergent_pairing)?;
    let mut run = CertificateRun::new(check);
    let mut state = ConvergentState::start(seq.element(1)?)?;
    for k in 2..=seq.len() {
        state = state.step(seq.element(k)?)?;
        if state.index() % 2 == 0 {
            run.observe(state.index(), &state.convergent_at(w));
        }
    }
    Ok(run.finish(CertificateTarget::EvenConvergents, sup))
}

/// Certifies `r_{2n+1}(w)` membership for every even depth `2n` up to the
/// sequence length.
pub fn certify_odd_reverse(
    seq: &ElementSequence,
    w: &ExtendedComplex,
    disk: &Disk,
    theta: f64,
    slack: f64,
) -> Result<RegionCertificate> {
    let (check, sup) = admit(disk, seq, w, theta, slack, reverse_pairing)?;
    let mut run = CertificateRun::new(check);
    let mut value = *w;
    for k in 1..=seq.len() {
        // r_{k+1} = 1/(b_k + r_k)
        value = step_point(seq.element(k)?, &value);
        if k % 2 == 0 {
            run.observe(k + 1, &value);
        }
    }
    Ok(run.finish(CertificateTarget::OddReverse, sup))
}

/// Certifies every even-index tail `t_{2n}`, `n <= pair_count`, computed
/// strictly backward from the supplied seed at index `2 * pair_count`.
pub fn certify_even_tails(
    seq: &ElementSequence,
    pair_count: usize,
    seed: &ExtendedComplex,
    disk: &Disk,
    theta: f64,
    slack: f64,
) -> Result<RegionCertificate> {
    let depth = 2 * pair_count;
    if depth > seq.len() {
        return Err(Error::OutOfRange {
            requested: depth,
            len: seq.len(),
        });
    }
    let (check, sup) = admit(disk, seq, seed, theta, slack, convergent_pairing)?;
    let mut run = CertificateRun::new(check);
    run.observe(depth, seed);
    let mut tail = *seed;
    for k in (1..=depth).rev() {
        tail = step_point(seq.element(k)?, &tail);
        if (k - 1) % 2 == 0 {
            run.observe(k - 1, &tail);
        }
    }
    Ok(run.finish(CertificateTarget::EvenTails, sup))
}
