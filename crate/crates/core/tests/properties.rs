use num_traits::{Signed, Zero};
use proptest::prelude::*;
use slopestab::catalog;
use slopestab::exceptional::{numerical_cycle, numerical_cycle_by, Component, EffConfig};
use slopestab::format::{parse_class, write_class};
use slopestab::rational::{q, qi};
use slopestab::slope::{destabilizes, mu_divisor, mu_surface, pseudo_epsilon, q_form, stability_polynomial_p, Mode};
use slopestab::suite::brute_colength;
use slopestab::zerodim::{colength, MonomialIdeal};
use slopestab::{CurveRecord, DivClass, ModelParts, SurfaceModel, Q};

fn ratio() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// On dp1 with `L = aH - bE` and `D = xE + y(H-E)`, the cubic `P(c)`
    /// has the sign of `mu_c - mu` throughout `(0, eps~)`.
    #[test]
    fn p_sign_matches_slope_difference(b in 1i64..6, extra in 1i64..8, x in 0i64..4, y in 0i64..4, u in 1i64..100) {
        prop_assume!(x + y > 0);
        let s = catalog::get("dp1").unwrap().model;
        let l = DivClass::from_ints(&[b + extra, -b]);
        let d = DivClass::from_ints(&[y, x - y]);
        prop_assume!(s.pair(&l, &d).unwrap().is_positive());
        let eps = pseudo_epsilon(&s, &l, &d).unwrap().round_down(&1000.into(), true);
        prop_assume!(eps.is_positive());
        let c = eps * q(u, 100);
        let p = stability_polynomial_p(&s, &l, &d, &c).unwrap();
        let diff = mu_divisor(&s, &l, &d, &c).unwrap() - mu_surface(&s, &l).unwrap();
        prop_assert_eq!(p.signum(), diff.signum());
    }

    /// For `D1.D2 = 0`, `Q(A, D1 + D2) - Q(A, D1) - Q(A, D2) = 8(A.D1)(A.D2)`.
    #[test]
    fn q_excess_for_orthogonal_fibres(n in 0i64..4, x in 1i64..9, y in 1i64..9, a in 1i64..6, k in 1i64..6) {
        let s = catalog::get(&format!("hirzebruch({n})")).unwrap().model;
        // aS + (na + k)F is ample
        let amp = DivClass::from_ints(&[n * a + k, a]);
        prop_assert!(s.is_ample(&amp).unwrap().passes());
        let (d1, d2) = (DivClass::from_ints(&[x, 0]), DivClass::from_ints(&[y, 0]));
        let excess = q_form(&s, &amp, &(&d1 + &d2)).unwrap() - q_form(&s, &amp, &d1).unwrap() - q_form(&s, &amp, &d2).unwrap();
        prop_assert_eq!(excess, qi(8) * qi(a * x) * qi(a * y));
    }

    /// Staircase colengths agree with counting lattice points.
    #[test]
    fn colength_matches_lattice_count(a0 in 1u32..5, b0 in 1u32..5, mid in proptest::option::of((1u32..4, 1u32..4)), j in 1u32..5) {
        let mut gens = vec![(a0, 0), (0, b0)];
        if let Some(m) = mid {
            gens.push(m);
        }
        let ideal = MonomialIdeal::new(gens.clone());
        prop_assert_eq!(colength(&ideal, j).unwrap(), brute_colength(&gens, j));
    }

    /// Product surfaces: `mu(X, L) = -2g` and the closed-form divisor slope.
    #[test]
    fn product_identities(g in 2i64..6, d in 1i64..15, c in (1i64..30, 1i64..40)) {
        let e = catalog::get(&format!("product({g},{d})")).unwrap();
        let s = &e.model;
        let l = &e.featured_boundary[0].cls;
        let dv = DivClass::from_ints(&[1, 0, 1]);
        prop_assert_eq!(mu_surface(s, l).unwrap(), qi(-2 * g));
        let c = q(c.0, c.1);
        let (gq, dq) = (qi(g), qi(d));
        let num = qi(3) * (qi(2) - &c * (&dq * (qi(2) * &gq - qi(2)) + qi(2) * &gq));
        let den = qi(2) * &c * (qi(3) - &c * (&dq * (qi(2) - qi(2) * &gq) + qi(2)));
        prop_assume!(!den.is_zero());
        prop_assert_eq!(mu_divisor(s, l, &dv, &c).unwrap(), num / den);
        // the graph has genus h = (g-1)d + 1 and square d(2-2g)
        prop_assert_eq!(s.square(&DivClass::from_ints(&[0, 0, 1])).unwrap(), qi(d * (2 - 2 * g)));
        prop_assert_eq!(s.arithmetic_genus(&DivClass::from_ints(&[0, 0, 1])).unwrap(), qi((g - 1) * d + 1));
    }

    /// Class text round-trips.
    #[test]
    fn class_text_round_trip(a in ratio(), b in ratio(), c in ratio()) {
        let s = catalog::get("dp2").unwrap().model;
        let x = DivClass::new(vec![a, b, c]);
        let text = write_class(s.basis(), &x);
        prop_assert_eq!(parse_class(&s, &text).unwrap(), x);
    }

    /// Nef divisors never destabilise on Hirzebruch surfaces.
    #[test]
    fn nef_never_destabilises(n in 0i64..4, x in 0i64..6, y in 0i64..6, a in 1i64..5, k in 1i64..5) {
        prop_assume!(x + y > 0);
        let s = catalog::get(&format!("hirzebruch({n})")).unwrap().model;
        // yS + xF is nef iff x >= ny
        let d = DivClass::from_ints(&[n * y + x, y]);
        let l = DivClass::from_ints(&[n * a + k, a]);
        prop_assert!(s.is_nef(&d).unwrap().passes());
        prop_assert!(!destabilizes(&s, &l, &d, Mode::Strict).unwrap().is_unstable());
    }
}

/// `<2>` beside a chain of smooth rational curves with the given squares.
fn chain_model(squares: &[i64]) -> (SurfaceModel, EffConfig) {
    let n = squares.len() + 1;
    let mut gram = vec![vec![qi(0); n]; n];
    gram[0][0] = qi(2);
    for (i, sq) in squares.iter().enumerate() {
        gram[i + 1][i + 1] = qi(*sq);
        if i + 2 < n {
            gram[i + 1][i + 2] = qi(1);
            gram[i + 2][i + 1] = qi(1);
        }
    }
    // K.C_i = -2 - C_i^2 on the chain, K.H = 0
    let block: Vec<Vec<Q>> = (1..n).map(|i| gram[i][1..].to_vec()).collect();
    let rhs: Vec<Q> = squares.iter().map(|s| qi(-2 - s)).collect();
    let k = slopestab::lattice::solve(&block, &rhs).unwrap();
    let basis: Vec<String> = std::iter::once("H".to_string()).chain((1..n).map(|i| format!("C{i}"))).collect();
    let curves: Vec<CurveRecord> = (1..n)
        .map(|i| CurveRecord { label: basis[i].clone(), cls: DivClass::basis_vector(n, i), genus: Some(0) })
        .collect();
    let cfg = EffConfig::new(
        curves.iter().map(|c| Component { label: c.label.clone(), cls: c.cls.clone(), multiplicity: 1 }).collect(),
    )
    .unwrap();
    let model = SurfaceModel::new(ModelParts {
        name: "chain".into(),
        basis,
        gram,
        canonical: DivClass::new(std::iter::once(qi(0)).chain(k).collect()),
        curves,
        curves_complete: false,
        kodaira_nonneg: false,
        reference_positive_class: Some(DivClass::basis_vector(n, 0)),
        effective_generators: vec![],
    })
    .unwrap();
    (model, cfg)
}

/// Every anti-nef cycle with multiplicities in `1..=bound` dominates `z`.
fn dominated_by_all(s: &SurfaceModel, z: &EffConfig, bound: u64) -> bool {
    let g = z.gram(s).unwrap();
    let n = z.len();
    let anti_nef = |m: &[u64]| (0..n).all(|j| (0..n).map(|i| qi(m[i] as i64) * &g[i][j]).sum::<Q>() <= qi(0));
    let zm = z.multiplicities();
    let mut m = vec![1u64; n];
    loop {
        if anti_nef(&m) && m.iter().zip(&zm).any(|(a, b)| a < b) {
            return false;
        }
        let mut i = 0;
        while i < n && m[i] == bound {
            m[i] = 1;
            i += 1;
        }
        if i == n {
            return anti_nef(&zm);
        }
        m[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// The numerical cycle of a chain is the least anti-nef cycle and does
    /// not depend on which positive component is bumped first.
    #[test]
    fn chain_cycles_are_minimal(squares in proptest::collection::vec(-4i64..=-2, 1..=3), picks in proptest::collection::vec(0usize..8, 32)) {
        let (s, cfg) = chain_model(&squares);
        let z = numerical_cycle(&s, &cfg).unwrap();
        prop_assert!(dominated_by_all(&s, &z, z.multiplicities().into_iter().max().unwrap() + 2));
        let mut it = picks.into_iter().cycle();
        let other = numerical_cycle_by(&s, &cfg, |c| c[it.next().unwrap() % c.len()]).unwrap();
        prop_assert_eq!(other.cycle, z);
    }
}
