//! Adjoint reduction: strip negative components and blow down -1 curves
//! until `K + D` (or `K + 2D`) is nef, or a plane / ruled exception shows up.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exceptional::{Component, EffConfig};
use crate::lattice::{DivClass, SurfaceModel};
use crate::rational::{qi, Q};
use crate::slope::removal_admissible;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionMode {
    /// Target `K + D`.
    KodairaNonneg,
    /// Target `K + 2D`.
    NefDivisor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionCase {
    AdjointNef,
    PlaneLine,
    RuledFibres,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionStep {
    /// One copy of the component was dropped from `D`.
    Removed { curve: String },
    /// The -1 curve was blown down.
    Contracted { curve: String },
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub surface: SurfaceModel,
    pub divisor: EffConfig,
    pub case: ReductionCase,
    pub log: Vec<ReductionStep>,
}

pub fn adjoint_reduction(s: &SurfaceModel, d: &EffConfig, mode: ReductionMode) -> Result<Reduction> {
    if !s.curves_complete() {
        return Err(Error::RosterIncomplete);
    }
    for c in d.components() {
        if !s.curves().iter().any(|r| r.cls == c.cls) {
            return Err(Error::InvalidConfig(format!("component {} is not a roster curve", c.label)));
        }
    }
    let weight = match mode {
        ReductionMode::KodairaNonneg => qi(1),
        ReductionMode::NefDivisor => qi(2),
    };
    let mut s = s.clone();
    let mut d = d.clone();
    let mut log = Vec::new();
    loop {
        let total = d.total(&s)?;
        let target = s.canonical().add_scaled(&weight, &total);
        let done = |surface, divisor, case, log| Ok(Reduction { surface, divisor, case, log });
        if s.is_nef(&target)?.passes() {
            return done(s, d, ReductionCase::AdjointNef, log);
        }
        if is_plane_line(&s, &total) {
            return done(s, d, ReductionCase::PlaneLine, log);
        }
        if is_ruled_fibres(&s, &total) {
            return done(s, d, ReductionCase::RuledFibres, log);
        }
        if let Some(i) = removable(&s, &d, &total)? {
            log.push(ReductionStep::Removed { curve: d.components()[i].label.clone() });
            let mut m = d.multiplicities();
            m[i] -= 1;
            d = d.with_multiplicities(&m);
            continue;
        }
        let minus_one = s.curves().iter().find(|c| {
            s.square(&c.cls).is_ok_and(|x| x == -Q::one())
                && s.pair(s.canonical(), &c.cls).is_ok_and(|x| x == -Q::one())
                && s.pair(&total, &c.cls).is_ok_and(|x| x.is_zero())
        });
        if let Some(e) = minus_one.cloned() {
            let (next, map) = s.contract_minus_one(&e.cls)?;
            let mut comps: Vec<Component> = Vec::new();
            for c in d.components() {
                let cls = map.pushforward(&c.cls);
                if cls.is_zero() || c.cls == e.cls {
                    continue;
                }
                match comps.iter_mut().find(|o| o.cls == cls) {
                    Some(o) => o.multiplicity += c.multiplicity,
                    None => comps.push(Component { cls, ..c.clone() }),
                }
            }
            log.push(ReductionStep::Contracted { curve: e.label.clone() });
            s = next;
            d = EffConfig::new(comps)?;
            continue;
        }
        let curve = s
            .curves()
            .iter()
            .find(|c| s.pair(&target, &c.cls).is_ok_and(|x| x.is_negative()))
            .map(|c| c.label.clone())
            .unwrap_or_default();
        return Err(Error::Stuck { curve, steps: log.len() });
    }
}

/// First component breaking the normal form that can legitimately be
/// dropped while leaving a nonzero divisor.
fn removable(s: &SurfaceModel, d: &EffConfig, total: &DivClass) -> Result<Option<usize>> {
    let size: u64 = d.multiplicities().iter().sum();
    if size <= 1 {
        return Ok(None);
    }
    let kd = s.canonical() + total;
    for (i, c) in d.components().iter().enumerate() {
        let f2 = s.square(&c.cls)?;
        if !f2.is_negative() {
            continue;
        }
        let kf = s.pair(s.canonical(), &c.cls)?;
        let minus_one = f2 == -Q::one() && kf == -Q::one();
        let violates = if minus_one {
            s.pair(total, &c.cls)?.is_negative()
        } else {
            s.pair(&kd, &c.cls)?.is_negative()
        };
        if !violates {
            continue;
        }
        let single = EffConfig::new(vec![Component { multiplicity: 1, ..c.clone() }])?;
        if removal_admissible(s, total, &single)?.0 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn is_plane_line(s: &SurfaceModel, total: &DivClass) -> bool {
    s.rank() == 1
        && s.gram()[0][0].is_one()
        && s.canonical().coeffs()[0] == qi(-3)
        && total.coeffs()[0].is_positive()
}

fn is_ruled_fibres(s: &SurfaceModel, total: &DivClass) -> bool {
    s.rank() == 2
        && s.curves().iter().any(|f| {
            s.square(&f.cls).is_ok_and(|x| x.is_zero())
                && s.pair(s.canonical(), &f.cls).is_ok_and(|x| x == qi(-2))
                && total.ratio_to(&f.cls).is_some_and(|k| k.is_positive())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{CurveRecord, ModelParts};

    fn blowup(n: usize) -> SurfaceModel {
        let rank = n + 1;
        let gram = (0..rank)
            .map(|i| (0..rank).map(|j| if i != j { qi(0) } else if i == 0 { qi(1) } else { qi(-1) }).collect())
            .collect();
        let mut canonical = vec![qi(1); rank];
        canonical[0] = qi(-3);
        let mut curves: Vec<CurveRecord> = (1..rank)
            .map(|i| CurveRecord { label: format!("E{i}"), cls: DivClass::basis_vector(rank, i), genus: Some(0) })
            .collect();
        if n == 2 {
            curves.push(CurveRecord { label: "L12".into(), cls: DivClass::from_ints(&[1, -1, -1]), genus: Some(0) });
        }
        if n == 0 {
            curves.push(CurveRecord { label: "H".into(), cls: DivClass::from_ints(&[1]), genus: Some(0) });
        }
        SurfaceModel::new(ModelParts {
            name: format!("bl{n}"),
            basis: std::iter::once("H".to_string()).chain((1..rank).map(|i| format!("E{i}"))).collect(),
            gram,
            canonical: DivClass::new(canonical),
            curves,
            curves_complete: true,
            kodaira_nonneg: false,
            reference_positive_class: Some(DivClass::basis_vector(rank, 0)),
            effective_generators: vec![],
        })
        .unwrap()
    }

    fn cfg(s: &SurfaceModel, labels: &[(&str, u64)]) -> EffConfig {
        EffConfig::new(
            labels
                .iter()
                .map(|(l, m)| Component { label: l.to_string(), cls: s.curve(l).unwrap().cls.clone(), multiplicity: *m })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn plane_line() {
        let s = blowup(0);
        let r = adjoint_reduction(&s, &cfg(&s, &[("H", 1)]), ReductionMode::NefDivisor).unwrap();
        assert_eq!(r.case, ReductionCase::PlaneLine);
        assert!(r.log.is_empty());
        let r = adjoint_reduction(&s, &cfg(&s, &[("H", 2)]), ReductionMode::NefDivisor).unwrap();
        assert_eq!(r.case, ReductionCase::AdjointNef);
    }

    #[test]
    fn dp2_line_class_contracts_to_the_plane() {
        let s = blowup(2);
        let d = cfg(&s, &[("L12", 1), ("E1", 1), ("E2", 1)]);
        let r = adjoint_reduction(&s, &d, ReductionMode::NefDivisor).unwrap();
        assert_eq!(r.case, ReductionCase::PlaneLine);
        assert_eq!(r.surface.rank(), 1);
        assert_eq!(r.log.len(), 2);
        assert!(r.log.iter().all(|st| matches!(st, ReductionStep::Contracted { .. })));
    }

    #[test]
    fn dp1_exceptional_curve_gets_stuck() {
        let s = blowup(1);
        let d = cfg(&s, &[("E1", 1)]);
        let err = adjoint_reduction(&s, &d, ReductionMode::NefDivisor).unwrap_err();
        assert_eq!(err, Error::Stuck { curve: "E1".into(), steps: 0 });
    }

    #[test]
    fn needs_complete_roster() {
        let mut p = blowup(1).parts();
        p.curves_complete = false;
        let s = SurfaceModel::new(p).unwrap();
        let d = cfg(&s, &[("E1", 1)]);
        assert!(matches!(
            adjoint_reduction(&s, &d, ReductionMode::KodairaNonneg),
            Err(Error::RosterIncomplete)
        ));
    }
}
