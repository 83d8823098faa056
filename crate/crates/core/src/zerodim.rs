//! Monomial ideals in two variables: colengths of powers by staircase
//! counting, the quadratic they eventually follow, and the resulting slope
//! of the zero-dimensional subscheme.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DivClass, SurfaceModel};
use crate::rational::{qi, Q};

/// A monomial ideal `(x^a y^b, ...)`, kept minimal and sorted by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<(u32, u32)>,
}

impl MonomialIdeal {
    pub fn new(gens: impl IntoIterator<Item = (u32, u32)>) -> Self {
        MonomialIdeal { gens: minimalise(gens.into_iter().collect()) }
    }

    /// `(x, y^n)`.
    pub fn curvilinear(n: u32) -> Self {
        Self::new([(1, 0), (0, n)])
    }

    /// `m^k` for the maximal ideal `m = (x, y)`.
    pub fn max_power(k: u32) -> Self {
        Self::new((0..=k).map(|a| (a, k - a)))
    }

    pub fn generators(&self) -> &[(u32, u32)] {
        &self.gens
    }

    pub fn has_finite_colength(&self) -> bool {
        matches!(self.gens.first(), Some((0, _))) && matches!(self.gens.last(), Some((_, 0)))
    }

    pub fn mul(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut all = Vec::with_capacity(self.gens.len() * other.gens.len());
        for &(a, b) in &self.gens {
            for &(c, d) in &other.gens {
                all.push((a + c, b + d));
            }
        }
        MonomialIdeal { gens: minimalise(all) }
    }

    pub fn pow(&self, j: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::new([(0, 0)]);
        for _ in 0..j {
            acc = acc.mul(self);
        }
        acc
    }

    /// Number of monomials outside the ideal.
    pub fn staircase_count(&self) -> Result<u64> {
        if !self.has_finite_colength() {
            return Err(Error::InfiniteColength);
        }
        // sorted by a ascending, so b is strictly descending
        Ok(self
            .gens
            .windows(2)
            .map(|w| u64::from(w[1].0 - w[0].0) * u64::from(w[0].1))
            .sum())
    }
}

fn minimalise(mut gens: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    gens.sort_unstable();
    gens.dedup();
    let mut out: Vec<(u32, u32)> = Vec::with_capacity(gens.len());
    for g in gens {
        // with a non-decreasing, g is redundant iff some kept b is <= g.b
        if out.last().is_none_or(|last| g.1 < last.1) {
            out.push(g);
        }
    }
    out
}

/// `length(R / I^j)`.
pub fn colength(i: &MonomialIdeal, j: u32) -> Result<u64> {
    if !i.has_finite_colength() {
        return Err(Error::InfiniteColength);
    }
    i.pow(j).staircase_count()
}

/// `colength(I^j) = c2 j^2 + c1 j + c0` for `j >= j0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertCoefficients {
    pub c2: Q,
    pub c1: Q,
    pub c0: Q,
    pub j0: u32,
}

impl HilbertCoefficients {
    /// `c2 x^2`.
    pub fn a0_tilde(&self, x: &Q) -> Q {
        &self.c2 * x * x
    }

    /// `c1 x`.
    pub fn a1_tilde(&self, x: &Q) -> Q {
        &self.c1 * x
    }

    pub fn eval(&self, j: u32) -> Q {
        let j = qi(i64::from(j));
        &self.c2 * &j * &j + &self.c1 * &j + &self.c0
    }
}

const DEFAULT_J: u32 = 10;
const MAX_J: u32 = 40;
const VALIDATION_POINTS: u32 = 5;

pub fn fit_coefficients(i: &MonomialIdeal) -> Result<HilbertCoefficients> {
    for j in DEFAULT_J..=MAX_J {
        if let Some(h) = fit_at(i, j)? {
            return Ok(h);
        }
    }
    Err(Error::FitFailed(MAX_J))
}

/// Fit from `j = J, J+1, J+2`, validated on `J+3 ..= J+7`; `None` when the
/// validation fails.
pub fn fit_at(i: &MonomialIdeal, big_j: u32) -> Result<Option<HilbertCoefficients>> {
    if !i.has_finite_colength() {
        return Err(Error::InfiniteColength);
    }
    let mut power = i.pow(big_j);
    let mut values = Vec::new();
    for _ in 0..3 + VALIDATION_POINTS {
        values.push(qi(power.staircase_count()? as i64));
        power = power.mul(i);
    }
    let j = qi(i64::from(big_j));
    let c2 = (&values[2] - qi(2) * &values[1] + &values[0]) / qi(2);
    let c1 = &values[1] - &values[0] - &c2 * (qi(2) * &j + qi(1));
    let c0 = &values[0] - &c2 * &j * &j - &c1 * &j;
    let h = HilbertCoefficients { c2, c1, c0, j0: big_j };
    let ok = values.iter().enumerate().all(|(k, v)| h.eval(big_j + k as u32) == *v);
    Ok(ok.then_some(h))
}

/// `(int_0^c a1~(x) + a0~'(x)/2 dx) / (int_0^c a0~(x) dx) = 3(c1 + c2) / (2 c2 c)`.
pub fn mu_zero_dim(h: &HilbertCoefficients, c: &Q) -> Result<Q> {
    if !c.is_positive() {
        return Err(Error::NonPositiveC(c.clone()));
    }
    if h.c2.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(qi(3) * (&h.c1 + &h.c2) / (qi(2) * &h.c2 * c))
}

/// `(3L + cK).L >= 0`. The caller vouches that `c` is at most the Seshadri
/// constant of the point.
pub fn point_bound_check(s: &SurfaceModel, l: &DivClass, c: &Q) -> Result<bool> {
    let v = l.scale(&qi(3)).add_scaled(c, s.canonical());
    Ok(!s.pair(&v, l)?.is_negative())
}

/// Named ideals used by the checks and the verification suite.
pub fn catalog_ideals() -> Vec<(String, MonomialIdeal)> {
    let mut v: Vec<(String, MonomialIdeal)> =
        (1..=6).map(|n| (format!("(x,y^{n})"), MonomialIdeal::curvilinear(n))).collect();
    for k in 2..=4 {
        v.push((format!("m^{k}"), MonomialIdeal::max_power(k)));
    }
    v.push(("(x^2,y^3)".into(), MonomialIdeal::new([(2, 0), (0, 3)])));
    v.push(("(x^3,xy,y^2)".into(), MonomialIdeal::new([(3, 0), (1, 1), (0, 2)])));
    v.push(("(x^4,x^2y,y^3)".into(), MonomialIdeal::new([(4, 0), (2, 1), (0, 3)])));
    v.push(("(x^5,x^3y,xy^2,y^4)".into(), MonomialIdeal::new([(5, 0), (3, 1), (1, 2), (0, 4)])));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn minimalisation() {
        let i = MonomialIdeal::new([(2, 2), (1, 3), (3, 0), (1, 1), (0, 5)]);
        assert_eq!(i.generators(), &[(0, 5), (1, 1), (3, 0)]);
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&MonomialIdeal::curvilinear(3), 4).unwrap(), 30);
        assert_eq!(colength(&MonomialIdeal::max_power(1), 1).unwrap(), 1);
        assert_eq!(colength(&MonomialIdeal::max_power(2), 3).unwrap(), 21);
        assert!(matches!(colength(&MonomialIdeal::new([(1, 0)]), 1), Err(Error::InfiniteColength)));
    }

    #[test]
    fn fits() {
        let h = fit_coefficients(&MonomialIdeal::max_power(2)).unwrap();
        assert_eq!((h.c2.clone(), h.c1.clone(), h.c0.clone()), (qi(2), qi(1), qi(0)));
        assert_eq!(mu_zero_dim(&h, &qi(1)).unwrap(), q(9, 4));
        let h = fit_coefficients(&MonomialIdeal::max_power(1)).unwrap();
        assert_eq!((h.c2, h.c1), (q(1, 2), q(1, 2)));
    }

    #[test]
    fn point_bound_examples() {
        let s = crate::catalog::get("dp1").unwrap().model;
        assert!(point_bound_check(&s, &DivClass::from_ints(&[3, -1]), &qi(2)).unwrap());
        assert!(!point_bound_check(&s, &DivClass::from_ints(&[3, -1]), &qi(4)).unwrap());
    }
}
