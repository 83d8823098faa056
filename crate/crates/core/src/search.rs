//! Bounded enumeration of effective classes `sum a_i G_i`, `0 <= a_i <= N`,
//! tested one by one against a fixed polarisation.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{DivClass, NamedClass, SurfaceModel};
use crate::rational::qi;
use crate::slope::{decide, not_ample, Mode, StabilityVerdict};

pub const DEFAULT_CAP: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub coefficients: Vec<u32>,
    pub class: DivClass,
    pub verdict: StabilityVerdict,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub generators: Vec<NamedClass>,
    pub bound: u32,
    /// Distinct nonzero classes tested.
    pub candidates: usize,
    /// Candidates with `L.D <= 0`, which cannot be tested.
    pub skipped: usize,
    pub hits: Vec<SearchHit>,
    pub conditional: bool,
}

impl SearchReport {
    pub fn summary(&self) -> String {
        let noun = if self.hits.len() == 1 { "destabiliser" } else { "destabilisers" };
        format!("{} {noun} among {} candidates", self.hits.len(), self.candidates)
    }
}

/// Roster curves followed by the declared effective generators, with
/// repeated classes dropped.
pub fn default_generators(s: &SurfaceModel) -> Vec<NamedClass> {
    let mut seen = HashSet::new();
    s.curves()
        .iter()
        .map(|c| NamedClass::new(c.label.clone(), c.cls.clone()))
        .chain(s.effective_generators().iter().cloned())
        .filter(|g| !g.cls.is_zero() && seen.insert(g.cls.clone()))
        .collect()
}

enum Outcome {
    Skipped,
    Stable,
    Hit(SearchHit),
}

/// Coefficient tuples in lexicographic order, last generator fastest.
fn tuples(n: usize, bound: u32) -> impl Iterator<Item = Vec<u32>> {
    let mut cur = Some(vec![0u32; n]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = n;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < bound {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

pub fn search(
    s: &SurfaceModel,
    l: &DivClass,
    generators: &[NamedClass],
    bound: u32,
    mode: Mode,
    cap: u64,
) -> Result<SearchReport> {
    s.check_dim(l)?;
    for g in generators {
        s.check_dim(&g.cls)?;
    }
    let v = s.is_ample(l)?;
    if !v.passes() {
        return Err(not_ample(&v));
    }
    let total = u128::from(bound + 1).checked_pow(generators.len() as u32).unwrap_or(u128::MAX);
    if total > u128::from(cap) {
        return Err(Error::BoundTooLarge { candidates: total, cap });
    }
    let mut seen = HashSet::new();
    let candidates: Vec<(Vec<u32>, DivClass)> = tuples(generators.len(), bound)
        .filter_map(|a| {
            let mut d = DivClass::zero(s.rank());
            for (k, g) in a.iter().zip(generators) {
                if *k > 0 {
                    d = d.add_scaled(&qi(i64::from(*k)), &g.cls);
                }
            }
            (!d.is_zero() && seen.insert(d.clone())).then_some((a, d))
        })
        .collect();
    let results: Vec<Result<Outcome>> = candidates
        .par_iter()
        .map(|(a, d)| {
            if s.pair(l, d)? <= qi(0) {
                return Ok(Outcome::Skipped);
            }
            let verdict = decide(s, l, d, mode)?;
            Ok(if verdict.is_unstable() {
                Outcome::Hit(SearchHit { coefficients: a.clone(), class: d.clone(), verdict })
            } else {
                Outcome::Stable
            })
        })
        .collect();
    let mut hits = Vec::new();
    let mut skipped = 0;
    for r in results {
        match r? {
            Outcome::Hit(h) => hits.push(h),
            Outcome::Skipped => skipped += 1,
            Outcome::Stable => {}
        }
    }
    Ok(SearchReport {
        generators: generators.to_vec(),
        bound,
        candidates: candidates.len(),
        skipped,
        hits,
        conditional: !s.curves_complete(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_order() {
        let all: Vec<_> = tuples(2, 1).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 4).count(), 125);
    }

    #[test]
    fn cap_is_enforced() {
        let e = crate::catalog::get("dp2").unwrap();
        let l = e.polarisation_named("-K").unwrap();
        let gens = default_generators(&e.model);
        assert_eq!(gens.len(), 3);
        let err = search(&e.model, l, &gens, 99, Mode::Strict, 1000).unwrap_err();
        assert!(matches!(err, Error::BoundTooLarge { candidates: 1_000_000, cap: 1000 }));
    }
}
