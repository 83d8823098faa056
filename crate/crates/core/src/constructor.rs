//! Building a polarisation destabilised by a given exceptional divisor of
//! arithmetic genus at least two, together with a certificate that can be
//! re-checked by plain evaluation.
//!
//! Start from an ample `H`, add multiples of the components to reach `L0`
//! orthogonal to every component, pick `c` where the orthogonal slope
//! `3(2p_a - 2)/(2cD^2)` already beats `mu(X, L0)`, then push back into the
//! ample cone with `L_s = L0 + sH` for small `s`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exceptional::{connected_components, is_exceptional, EffConfig};
use crate::lattice::{solve, DivClass, Positivity, SurfaceModel};
use crate::rational::{qi, Q};
use crate::slope::{mu_divisor, mu_surface, not_ample, orthogonal_slope, seshadri_divisor};

pub const MAX_HALVINGS: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub surface: SurfaceModel,
    pub divisor: EffConfig,
    pub h: DivClass,
    pub q: Vec<Q>,
    pub epsilon_floor: Q,
    pub c: Q,
    pub s: Q,
    pub l_s: DivClass,
    pub mu_x: Q,
    pub mu_d: Q,
    pub conditional: bool,
}

impl Certificate {
    /// `L0 = H + sum q_i D_i`.
    pub fn l0(&self) -> DivClass {
        orthogonal_class(&self.h, &self.divisor, &self.q)
    }
}

fn orthogonal_class(h: &DivClass, d: &EffConfig, q: &[Q]) -> DivClass {
    d.components()
        .iter()
        .zip(q)
        .fold(h.clone(), |acc, (c, qi)| acc.add_scaled(qi, &c.cls))
}

/// The invariant a certificate fails, first one found.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum CertificateViolation {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("L0 is not orthogonal to component {0}")]
    Orthogonality(String),
    #[error("q_{0} is not positive")]
    NonPositiveQ(usize),
    #[error("epsilon_floor is not min q_i/d_i")]
    EpsilonFloor,
    #[error("c is not in (0, epsilon_floor)")]
    CRange,
    #[error("s is not positive")]
    SNonPositive,
    #[error("L_s differs from L0 + sH")]
    LsMismatch,
    #[error("recorded slopes differ from recomputed values")]
    SlopeValues,
    #[error("mu_D < mu_X fails")]
    SlopeInequality,
    #[error("L_s is not ample")]
    NotAmple,
    #[error("c exceeds the Seshadri bound of D at L_s")]
    SeshadriBound,
    #[error("conditional flag does not match the roster")]
    ConditionalFlag,
}

/// Solves `(D_i.D_j) q = -(H.D_j)` and returns `q` with `L0 = H + sum q_i D_i`.
pub fn solve_orthogonal_polarization(
    s: &SurfaceModel,
    d: &EffConfig,
    h: &DivClass,
) -> Result<(Vec<Q>, DivClass)> {
    if !is_exceptional(s, d)? {
        return Err(Error::NotExceptional);
    }
    let v = s.is_ample(h)?;
    if !v.passes() {
        return Err(not_ample(&v));
    }
    let total = d.total(s)?;
    for c in d.components() {
        if s.pair(&total, &c.cls)?.is_positive() {
            return Err(Error::Hypothesis(format!("D.{} > 0", c.label)));
        }
    }
    let g = d.gram(s)?;
    let rhs: Vec<Q> = d.components().iter().map(|c| s.pair(h, &c.cls).map(|x| -x)).collect::<Result<_>>()?;
    let q = solve(&g, &rhs).ok_or(Error::NotExceptional)?;
    if let Some(i) = q.iter().position(|x| !x.is_positive()) {
        return Err(Error::Hypothesis(format!("q_{i} = {} is not positive", q[i])));
    }
    let l0 = orthogonal_class(h, d, &q);
    Ok((q, l0))
}

pub fn epsilon_floor(d: &EffConfig, q: &[Q]) -> Q {
    d.components()
        .iter()
        .zip(q)
        .map(|(c, qi_)| qi_ / qi(c.multiplicity as i64))
        .min()
        .expect("nonempty configuration")
}

/// A `c` in `(0, epsilon_floor)` with `3(2p_a - 2)/(2cD^2) < mu(X, L0)`:
/// half of the smaller of the threshold and `epsilon_floor`.
pub fn find_destabilizing_c(s: &SurfaceModel, l0: &DivClass, d: &EffConfig, epsilon_floor: &Q) -> Result<Q> {
    let total = d.total(s)?;
    if !s.pair(l0, &total)?.is_zero() {
        return Err(Error::Hypothesis("L0.D is not zero".into()));
    }
    let d2 = s.square(&total)?;
    if !d2.is_negative() {
        return Err(Error::Hypothesis("D^2 is not negative".into()));
    }
    let pa = s.arithmetic_genus(&total)?;
    if pa < qi(2) {
        return Err(Error::Hypothesis(format!("p_a(D) = {pa} is below 2")));
    }
    let mu0 = mu_surface(s, l0)?;
    // slope(c) = k / c with k < 0
    let k = qi(3) * (qi(2) * &pa - qi(2)) / (qi(2) * &d2);
    let top = if mu0.is_negative() {
        (&k / &mu0).min(epsilon_floor.clone())
    } else {
        epsilon_floor.clone()
    };
    let c = top / qi(2);
    debug_assert!(orthogonal_slope(s, &total, &c)? < mu0);
    Ok(c)
}

/// Halves `s` from 1 until `L_s = L0 + sH` is ample, `c` is within the
/// Seshadri bound and the slope inequality holds at `L_s`.
pub fn perturb_polarization(
    s: &SurfaceModel,
    l0: &DivClass,
    h: &DivClass,
    d: &EffConfig,
    c: &Q,
) -> Result<(Q, DivClass)> {
    let total = d.total(s)?;
    let mut step = qi(1);
    let mut failing = String::new();
    for _ in 0..=MAX_HALVINGS {
        let ls = l0.add_scaled(&step, h);
        match perturbation_failure(s, &ls, &total, c)? {
            None => return Ok((step, ls)),
            Some(why) => failing = why,
        }
        step /= qi(2);
    }
    Err(Error::PerturbationCap { halvings: MAX_HALVINGS, condition: failing })
}

fn perturbation_failure(s: &SurfaceModel, ls: &DivClass, d: &DivClass, c: &Q) -> Result<Option<String>> {
    if !s.is_ample(ls)?.passes() {
        return Ok(Some("L_s ample".into()));
    }
    if s.pair(ls, d)?.is_positive() {
        if seshadri_divisor(s, ls, d)?.value.cmp_rational(c).is_lt() {
            return Ok(Some("c <= eps(D, L_s)".into()));
        }
    } else {
        return Ok(Some("L_s.D > 0".into()));
    }
    if mu_divisor(s, ls, d, c)? >= mu_surface(s, ls)? {
        return Ok(Some("mu_c(O_D, L_s) < mu(X, L_s)".into()));
    }
    Ok(None)
}

pub fn build_certificate(s: &SurfaceModel, d: &EffConfig, h: &DivClass) -> Result<Certificate> {
    let parts = connected_components(s, d)?.len();
    if parts != 1 {
        return Err(Error::NotConnected(parts));
    }
    let (q, l0) = solve_orthogonal_polarization(s, d, h)?;
    let eps = epsilon_floor(d, &q);
    let c = find_destabilizing_c(s, &l0, d, &eps)?;
    let (step, l_s) = perturb_polarization(s, &l0, h, d, &c)?;
    let total = d.total(s)?;
    let cert = Certificate {
        surface: s.clone(),
        divisor: d.clone(),
        h: h.clone(),
        mu_x: mu_surface(s, &l_s)?,
        mu_d: mu_divisor(s, &l_s, &total, &c)?,
        conditional: s.is_ample(&l_s)?.status == Positivity::ConditionalYes,
        q,
        epsilon_floor: eps,
        c,
        s: step,
        l_s,
    };
    debug_assert_eq!(verify_certificate(&cert), Ok(()));
    Ok(cert)
}

/// Re-checks every invariant by evaluation only.
pub fn verify_certificate(cert: &Certificate) -> std::result::Result<(), CertificateViolation> {
    use CertificateViolation as V;
    let s = &cert.surface;
    let d = &cert.divisor;
    let malformed = |e: Error| V::Malformed(e.to_string());
    if cert.q.len() != d.len() || d.is_empty() {
        return Err(V::Malformed("q does not match the divisor".into()));
    }
    s.check_dim(&cert.h).map_err(malformed)?;
    s.check_dim(&cert.l_s).map_err(malformed)?;
    let l0 = cert.l0();
    for c in d.components() {
        if !s.pair(&l0, &c.cls).map_err(malformed)?.is_zero() {
            return Err(V::Orthogonality(c.label.clone()));
        }
    }
    if let Some(i) = cert.q.iter().position(|x| !x.is_positive()) {
        return Err(V::NonPositiveQ(i));
    }
    if cert.epsilon_floor != epsilon_floor(d, &cert.q) {
        return Err(V::EpsilonFloor);
    }
    if !cert.c.is_positive() || cert.c >= cert.epsilon_floor {
        return Err(V::CRange);
    }
    if !cert.s.is_positive() {
        return Err(V::SNonPositive);
    }
    if cert.l_s != l0.add_scaled(&cert.s, &cert.h) {
        return Err(V::LsMismatch);
    }
    let total = d.total(s).map_err(malformed)?;
    let mu_x = mu_surface(s, &cert.l_s).map_err(|_| V::NotAmple)?;
    let mu_d = mu_divisor(s, &cert.l_s, &total, &cert.c).map_err(malformed)?;
    if mu_x != cert.mu_x || mu_d != cert.mu_d {
        return Err(V::SlopeValues);
    }
    if mu_d >= mu_x {
        return Err(V::SlopeInequality);
    }
    let amp = s.is_ample(&cert.l_s).map_err(malformed)?;
    if !amp.passes() {
        return Err(V::NotAmple);
    }
    if !s.pair(&cert.l_s, &total).map_err(malformed)?.is_positive() {
        return Err(V::SeshadriBound);
    }
    let eps = seshadri_divisor(s, &cert.l_s, &total).map_err(malformed)?;
    if eps.value.cmp_rational(&cert.c).is_lt() {
        return Err(V::SeshadriBound);
    }
    if cert.conditional != amp.is_conditional() {
        return Err(V::ConditionalFlag);
    }
    Ok(())
}
