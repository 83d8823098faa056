//! Slopes of surfaces and of divisors, Seshadri-type bounds, and the exact
//! destabilisation decision.
//!
//! For a divisor `D` and `c > 0` write
//! `N(c) = 3(2L.D - c(K.D + D^2)) - mu(X) * 2c(3L.D - cD^2)`.
//! On the range where `3L.D - cD^2 > 0` the sign of `N` is the sign of
//! `mu_c(O_D) - mu(X)`, so instability is the question of whether the
//! quadratic `N` goes negative before the relevant epsilon.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exceptional::EffConfig;
use crate::lattice::{DivClass, PositivityVerdict, SurfaceModel};
use crate::quad::QuadBound;
use crate::rational::{qi, Q};

/// `mu(X, L) = -K.L / L^2`.
pub fn mu_surface(s: &SurfaceModel, l: &DivClass) -> Result<Q> {
    let l2 = s.square(l)?;
    if !l2.is_positive() {
        return Err(Error::InvalidPolarisation(format!("L^2 = {l2} is not positive")));
    }
    Ok(-s.pair(s.canonical(), l)? / l2)
}

/// `mu_c(O_D, L) = 3(2L.D - c(K.D + D^2)) / (2c(3L.D - cD^2))`.
pub fn mu_divisor(s: &SurfaceModel, l: &DivClass, d: &DivClass, c: &Q) -> Result<Q> {
    if !c.is_positive() {
        return Err(Error::NonPositiveC(c.clone()));
    }
    let ld = s.pair(l, d)?;
    let kd = s.pair(s.canonical(), d)?;
    let d2 = s.square(d)?;
    let den = qi(2) * c * (qi(3) * &ld - c * &d2);
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(qi(3) * (qi(2) * ld - c * (kd + d2)) / den)
}

fn positive_degree(s: &SurfaceModel, l: &DivClass, d: &DivClass) -> Result<Q> {
    let ld = s.pair(l, d)?;
    if !ld.is_positive() {
        return Err(Error::NonPositiveDegree(ld));
    }
    Ok(ld)
}

/// Smallest positive root of `(L - tD)^2 = D^2 t^2 - 2(L.D) t + L^2`.
///
/// Written as `L^2 / (L.D + sqrt((L.D)^2 - D^2 L^2))`, which covers
/// `D^2` of either sign and the linear case at once.
pub fn pseudo_epsilon(s: &SurfaceModel, l: &DivClass, d: &DivClass) -> Result<QuadBound> {
    let l2 = s.square(l)?;
    if !l2.is_positive() {
        return Err(Error::InvalidPolarisation(format!("L^2 = {l2} is not positive")));
    }
    let ld = positive_degree(s, l, d)?;
    let d2 = s.square(d)?;
    let disc = &ld * &ld - &d2 * &l2;
    // Hodge index: disc >= 0 whenever L^2 > 0
    debug_assert!(!disc.is_negative());
    let den = QuadBound::sqrt(&disc).add_rational(&ld);
    let eps = den.recip().expect("L.D > 0").scale(&l2);
    debug_assert!(eps.scale(&d2).cmp_rational(&ld).is_le());
    Ok(eps)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeshadriBound {
    pub value: QuadBound,
    /// True when the roster is not known to be complete.
    pub conditional: bool,
    /// The roster curve realising the minimum, if any does.
    pub binding: Option<String>,
}

/// `sup { t : L - tD ample }` as seen by the roster, capped by the square
/// condition `(L - tD)^2 > 0`.
pub fn seshadri_divisor(s: &SurfaceModel, l: &DivClass, d: &DivClass) -> Result<SeshadriBound> {
    let v = s.is_ample(l)?;
    if !v.passes() {
        return Err(not_ample(&v));
    }
    seshadri_unchecked(s, l, d)
}

fn seshadri_unchecked(s: &SurfaceModel, l: &DivClass, d: &DivClass) -> Result<SeshadriBound> {
    let mut value = pseudo_epsilon(s, l, d)?;
    let mut binding = None;
    for c in s.curves() {
        let dc = s.pair(d, &c.cls)?;
        if !dc.is_positive() {
            continue;
        }
        let t = s.pair(l, &c.cls)? / dc;
        if value.cmp_rational(&t).is_ge() {
            value = QuadBound::rational(t);
            binding = Some(c.label.clone());
        }
    }
    Ok(SeshadriBound { value, conditional: !s.curves_complete(), binding })
}

pub(crate) fn not_ample(v: &PositivityVerdict) -> Error {
    let why = v
        .reasons
        .iter()
        .map(|(l, x)| format!("{l}: {x}"))
        .collect::<Vec<_>>()
        .join(", ");
    Error::InvalidPolarisation(format!("not ample ({why})"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Interval `(0, eps]` with the roster Seshadri constant.
    Strict,
    /// Interval `(0, eps~)` with the pseudo-Seshadri constant.
    Pseudo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EpsilonKind {
    RosterSeshadri,
    PseudoEpsilon,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub stable_wrt_d: bool,
    pub witness_c: Option<Q>,
    pub epsilon_used: QuadBound,
    pub epsilon_kind: EpsilonKind,
    pub conditional: bool,
    pub mu_x: Q,
    pub mu_at_witness: Option<Q>,
    /// The open set of destabilising `c`, clipped to the epsilon range.
    pub unstable_region: Option<(QuadBound, QuadBound)>,
}

/// Coefficients `(alpha, beta, gamma)` of `N(c) = alpha c^2 + beta c + gamma`.
pub fn stability_quadratic(s: &SurfaceModel, l: &DivClass, d: &DivClass) -> Result<[Q; 3]> {
    let mu = mu_surface(s, l)?;
    let ld = s.pair(l, d)?;
    let kd = s.pair(s.canonical(), d)?;
    let d2 = s.square(d)?;
    let alpha = qi(2) * &mu * &d2;
    let beta = -qi(3) * (kd + d2) - qi(6) * &mu * &ld;
    let gamma = qi(6) * ld;
    Ok([alpha, beta, gamma])
}

/// Open interval `(lo, hi)` of `c > 0` where `N(c) < 0`; `hi = None` means
/// unbounded. With `N(0) > 0` there is at most one such interval.
fn negative_region(n: &[Q; 3]) -> Option<(QuadBound, Option<QuadBound>)> {
    let [alpha, beta, gamma] = n;
    debug_assert!(gamma.is_positive());
    if alpha.is_zero() {
        return beta.is_negative().then(|| (QuadBound::rational(-gamma / beta), None));
    }
    let disc = beta * beta - qi(4) * alpha * gamma;
    let root = |sign: i64| {
        QuadBound::sqrt(&disc)
            .scale(&qi(sign))
            .add_rational(&-beta)
            .scale(&(qi(2) * alpha).recip())
    };
    if alpha.is_negative() {
        // roots of opposite sign; negative past the positive one
        Some((root(-1), None))
    } else if disc.is_positive() && beta.is_negative() {
        Some((root(-1), Some(root(1))))
    } else {
        None
    }
}

/// A rational strictly between `lo < hi`, found by rounding both ends
/// inward at denominator `10^6` (refined when the gap is narrower).
pub fn rational_between(lo: &QuadBound, hi: &QuadBound) -> Q {
    assert!(lo < hi, "empty interval");
    let mut denom = BigInt::from(1_000_000u32);
    loop {
        let a = lo.round_up(&denom, true);
        let b = hi.round_down(&denom, true);
        if a <= b {
            return (a + b) / qi(2);
        }
        denom *= 1000;
    }
}

pub fn destabilizes(s: &SurfaceModel, l: &DivClass, d: &DivClass, mode: Mode) -> Result<StabilityVerdict> {
    let v = s.is_ample(l)?;
    if !v.passes() {
        return Err(not_ample(&v));
    }
    decide(s, l, d, mode)
}

/// As [`destabilizes`] but accepting a nef `L` of positive square, for
/// classes on the boundary of the ample cone.
pub fn destabilizes_nef(s: &SurfaceModel, l: &DivClass, d: &DivClass, mode: Mode) -> Result<StabilityVerdict> {
    let v = s.is_nef(l)?;
    if !v.passes() {
        return Err(Error::InvalidPolarisation(format!("not nef ({:?})", v.reasons)));
    }
    decide(s, l, d, mode)
}

pub(crate) fn decide(s: &SurfaceModel, l: &DivClass, d: &DivClass, mode: Mode) -> Result<StabilityVerdict> {
    let mu_x = mu_surface(s, l)?;
    positive_degree(s, l, d)?;
    let (eps, kind) = match mode {
        Mode::Strict => (seshadri_unchecked(s, l, d)?.value, EpsilonKind::RosterSeshadri),
        Mode::Pseudo => (pseudo_epsilon(s, l, d)?, EpsilonKind::PseudoEpsilon),
    };
    let conditional = !s.curves_complete();
    let stable = |eps| StabilityVerdict {
        stable_wrt_d: true,
        witness_c: None,
        epsilon_used: eps,
        epsilon_kind: kind,
        conditional,
        mu_x: mu_x.clone(),
        mu_at_witness: None,
        unstable_region: None,
    };
    let n = stability_quadratic(s, l, d)?;
    let Some((lo, hi)) = negative_region(&n) else {
        return Ok(stable(eps));
    };
    // Closed versus open right end does not matter: (lo, hi) is open, so it
    // meets (0, eps] exactly when it meets (0, eps).
    if lo >= eps {
        return Ok(stable(eps));
    }
    let top = match hi {
        Some(h) if h < eps => h,
        _ => eps.clone(),
    };
    let c = rational_between(&lo, &top);
    let ld = s.pair(l, d)?;
    let d2 = s.square(d)?;
    assert!((qi(3) * ld - &c * d2).is_positive(), "slope denominator must be positive below eps~");
    let mu_c = mu_divisor(s, l, d, &c)?;
    assert!(mu_c < mu_x, "witness must satisfy the strict slope inequality");
    Ok(StabilityVerdict {
        stable_wrt_d: false,
        witness_c: Some(c),
        epsilon_used: eps,
        epsilon_kind: kind,
        conditional,
        mu_x,
        mu_at_witness: Some(mu_c),
        unstable_region: Some((lo, top)),
    })
}

/// `Q(A, D) = 2((K + 2D).A)(A.D) - (K.D - D^2) A^2`.
pub fn q_form(s: &SurfaceModel, a: &DivClass, d: &DivClass) -> Result<Q> {
    let k = s.canonical();
    let k2d = k.add_scaled(&qi(2), d);
    let ad = s.pair(a, d)?;
    Ok(qi(2) * s.pair(&k2d, a)? * ad - (s.pair(k, d)? - s.square(d)?) * s.square(a)?)
}

/// The cubic in `c` whose positivity, with `A = L - cD`, is equivalent to
/// `mu(X) < mu_c(O_D)`:
/// `c^3 (K.D + 3D^2) D^2 + 4c^2 (K.A + 3A.D) D^2 + 3c Q(A, D) + 6 (A.D) A^2`.
pub fn stability_polynomial_p(s: &SurfaceModel, l: &DivClass, d: &DivClass, c: &Q) -> Result<Q> {
    let a = l.add_scaled(&-c, d);
    let k = s.canonical();
    let d2 = s.square(d)?;
    let kd = s.pair(k, d)?;
    let ad = s.pair(&a, d)?;
    let ka = s.pair(k, &a)?;
    let a2 = s.square(&a)?;
    let c2 = c * c;
    let c3 = &c2 * c;
    Ok(c3 * (kd + qi(3) * &d2) * &d2
        + qi(4) * c2 * (ka + qi(3) * &ad) * &d2
        + qi(3) * c * q_form(s, &a, d)?
        + qi(6) * ad * a2)
}

/// Whether `F` may be dropped from `D`: `2D.F <= min(F^2, F^2 - K.F)` for
/// the first flag, plus `D.F_i <= F_i^2` on every component for the second.
pub fn removal_admissible(s: &SurfaceModel, d: &DivClass, f: &EffConfig) -> Result<(bool, bool)> {
    let ft = f.total(s)?;
    let f2 = s.square(&ft)?;
    if !f2.is_negative() {
        return Err(Error::NonNegativeSquare(f2));
    }
    let df = s.pair(d, &ft)?;
    let kf = s.pair(s.canonical(), &ft)?;
    let bound = if kf.is_positive() { &f2 - &kf } else { f2.clone() };
    let part1 = qi(2) * df <= bound;
    let mut part2 = part1;
    for c in f.components() {
        if s.pair(d, &c.cls)? > s.square(&c.cls)? {
            part2 = false;
        }
    }
    Ok((part1, part2))
}

/// Ampleness of `2(K.L) L - (L^2) K`.
pub fn check_weinkove(s: &SurfaceModel, l: &DivClass) -> Result<PositivityVerdict> {
    let kl = s.pair(s.canonical(), l)?;
    let l2 = s.square(l)?;
    let cls = l.scale(&(qi(2) * kl)).add_scaled(&-l2, s.canonical());
    s.is_ample(&cls)
}

/// Necessary condition for `D` to destabilise when `K.L >= 0`: `p_a(D) >= 2`.
pub fn genus_obstruction(s: &SurfaceModel, l: &DivClass, d: &DivClass) -> Result<bool> {
    let kl = s.pair(s.canonical(), l)?;
    if kl.is_negative() {
        return Err(Error::NegativeCanonicalDegree(kl));
    }
    Ok(s.arithmetic_genus(d)? >= qi(2))
}

/// `3(2p_a(D) - 2) / (2cD^2)`, the divisor slope when `L.D = 0`.
pub fn orthogonal_slope(s: &SurfaceModel, d: &DivClass, c: &Q) -> Result<Q> {
    let d2 = s.square(d)?;
    if d2.is_zero() || !c.is_positive() {
        return Err(Error::ZeroDenominator);
    }
    let pa = s.arithmetic_genus(d)?;
    Ok(qi(3) * (qi(2) * pa - qi(2)) / (qi(2) * c * d2))
}

/// `true` when `sign(x)` and `sign(y)` agree.
pub fn same_sign(x: &Q, y: &Q) -> bool {
    x.signum() == y.signum()
}

impl StabilityVerdict {
    pub fn is_unstable(&self) -> bool {
        !self.stable_wrt_d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{CurveRecord, ModelParts};
    use crate::rational::q;

    fn dp1() -> SurfaceModel {
        SurfaceModel::new(ModelParts {
            name: "dp1".into(),
            basis: vec!["H".into(), "E".into()],
            gram: vec![vec![qi(1), qi(0)], vec![qi(0), qi(-1)]],
            canonical: DivClass::from_ints(&[-3, 1]),
            curves: vec![
                CurveRecord { label: "E".into(), cls: DivClass::from_ints(&[0, 1]), genus: Some(0) },
                CurveRecord { label: "H-E".into(), cls: DivClass::from_ints(&[1, -1]), genus: Some(0) },
            ],
            curves_complete: true,
            kodaira_nonneg: false,
            reference_positive_class: Some(DivClass::from_ints(&[1, 0])),
            effective_generators: vec![],
        })
        .unwrap()
    }

    #[test]
    fn dp1_values() {
        let s = dp1();
        let l = DivClass::from_ints(&[3, -1]);
        let e = DivClass::from_ints(&[0, 1]);
        assert_eq!(mu_surface(&s, &l).unwrap(), qi(1));
        // 3(2 + 18/5) / ((18/5)(24/5)); below mu = 1 since 9/5 > sqrt(3)
        assert_eq!(mu_divisor(&s, &l, &e, &q(9, 5)).unwrap(), q(35, 36));
        assert_eq!(pseudo_epsilon(&s, &l, &e).unwrap(), QuadBound::rational(qi(2)));
        assert_eq!(pseudo_epsilon(&s, &l, &l).unwrap(), QuadBound::rational(qi(1)));
        let z1 = seshadri_divisor(&s, &l, &DivClass::from_ints(&[1, -1])).unwrap();
        assert_eq!(z1.value, QuadBound::rational(qi(1)));
        assert_eq!(z1.binding.as_deref(), Some("E"));
        let z2 = seshadri_divisor(&s, &l, &DivClass::from_ints(&[1, 0])).unwrap();
        assert_eq!(z2.value, QuadBound::rational(qi(2)));
    }

    #[test]
    fn dp1_exceptional_curve_destabilises() {
        let s = dp1();
        let l = DivClass::from_ints(&[3, -1]);
        let e = DivClass::from_ints(&[0, 1]);
        let v = destabilizes(&s, &l, &e, Mode::Strict).unwrap();
        assert!(!v.stable_wrt_d);
        let (lo, hi) = v.unstable_region.clone().unwrap();
        assert_eq!(lo, QuadBound::sqrt(&qi(3)));
        assert_eq!(hi, QuadBound::rational(qi(2)));
        let c = v.witness_c.unwrap();
        assert!(qi(2) * &c * &c > qi(6) && c <= qi(2));
        assert!(v.mu_at_witness.unwrap() < qi(1));
        // N(c) = 6 - 2c^2 only goes negative above sqrt(3) < 2 = eps~
        let v = destabilizes(&s, &l, &e, Mode::Pseudo).unwrap();
        assert!(!v.stable_wrt_d);
    }

    #[test]
    fn degree_and_c_errors() {
        let s = dp1();
        let l = DivClass::from_ints(&[3, -1]);
        assert!(matches!(
            pseudo_epsilon(&s, &l, &DivClass::from_ints(&[0, -1])),
            Err(Error::NonPositiveDegree(_))
        ));
        assert!(matches!(
            mu_divisor(&s, &l, &l, &qi(0)),
            Err(Error::NonPositiveC(_))
        ));
        // 3L.D - cD^2 = 3*8 - 3*8 = 0 at c = 3 for D = L
        assert!(matches!(mu_divisor(&s, &l, &l, &qi(3)), Err(Error::ZeroDenominator)));
        assert!(matches!(
            genus_obstruction(&s, &l, &l),
            Err(Error::NegativeCanonicalDegree(_))
        ));
    }

    #[test]
    fn removal_examples() {
        let s = dp1();
        let e = EffConfig::reduced_of([("E".to_string(), DivClass::from_ints(&[0, 1]))]).unwrap();
        // -1 curve: part1 iff D.E <= -1
        assert!(removal_admissible(&s, &DivClass::from_ints(&[0, 1]), &e).unwrap().0);
        assert!(!removal_admissible(&s, &DivClass::from_ints(&[1, 0]), &e).unwrap().0);
        let h = EffConfig::reduced_of([("H".to_string(), DivClass::from_ints(&[1, 0]))]).unwrap();
        assert!(matches!(
            removal_admissible(&s, &DivClass::from_ints(&[1, 0]), &h),
            Err(Error::NonNegativeSquare(_))
        ));
    }

    #[test]
    fn q_and_p_examples() {
        let s = dp1();
        let h = DivClass::from_ints(&[1, 0]);
        let z = DivClass::zero(2);
        assert_eq!(q_form(&s, &h, &z).unwrap(), qi(0));
        // with D = 0 only the last term survives, and it carries A.D = 0
        assert_eq!(stability_polynomial_p(&s, &h, &z, &q(1, 2)).unwrap(), qi(0));
    }

    #[test]
    fn orthogonal_slope_matches_general_formula() {
        let s = dp1();
        // L.D = 0 needs L = H, D = E
        let l = DivClass::from_ints(&[1, 0]);
        let e = DivClass::from_ints(&[0, 1]);
        for c in [q(1, 3), q(1, 2), qi(2)] {
            assert_eq!(mu_divisor(&s, &l, &e, &c).unwrap(), orthogonal_slope(&s, &e, &c).unwrap());
        }
    }
}
