//! Locked values from exact runs.

use num_traits::Signed;
use slopestab::catalog;
use slopestab::constructor::build_certificate;
use slopestab::rational::{q, qi};
use slopestab::scan::{cone_scan, CellVerdict};
use slopestab::search::{default_generators, search, DEFAULT_CAP};
use slopestab::slope::{destabilizes, Mode};
use slopestab::suite::product_crossing;
use slopestab::{DivClass, NamedClass, Q};

#[test]
fn product_slope_first_crossing() {
    // 8(10 - 3d)/(21 + 3d) < -79/10  <=>  3d > 2459, so d = 820
    assert_eq!(product_crossing(1000).unwrap(), (Some(820), true));
    let below = |d: i64| Q::new((8 * (10 - 3 * d)).into(), (21 + 3 * d).into()) < q(-79, 10);
    assert!(!below(819) && below(820));
}

fn synthetic_scan(from_l0: bool, grid: u32) -> slopestab::scan::ScanReport {
    let e = catalog::get("synthetic-highgenus").unwrap();
    let cert = build_certificate(&e.model, e.config_named("C").unwrap(), &DivClass::from_ints(&[1, 0])).unwrap();
    let la = if from_l0 { cert.l0() } else { cert.l_s.clone() };
    let d = vec![NamedClass::new("C", DivClass::from_ints(&[0, 1]))];
    cone_scan(&e.model, &la, &DivClass::from_ints(&[1, 0]), grid, &d, Mode::Strict).unwrap()
}

#[test]
fn synthetic_scan_transitions() {
    let flags = |r: &slopestab::scan::ScanReport| r.cells.iter().map(|c| c.verdict.is_unstable()).collect::<Vec<_>>();
    let from_ls = flags(&synthetic_scan(false, 1000));
    assert!(from_ls[..7].iter().all(|&u| u));
    assert!(from_ls[7..].iter().all(|&u| !u));
    let from_l0 = flags(&synthetic_scan(true, 1000));
    assert!(from_l0[..117].iter().all(|&u| u));
    assert!(from_l0[117..].iter().all(|&u| !u));
}

/// Along `L_t = A + (1-t)C`, `C` destabilises iff
/// `f(c) = (2-t)c^2 + (6t - 2t^2 - 2)c + 2t - t^3` goes negative below
/// `eps = sqrt 2 - t`; the vertex stays below `7/5 - t` wherever `f` has
/// real roots, so this reduces to a positive discriminant with `b < 0`.
#[test]
fn synthetic_scan_matches_closed_form() {
    let r = synthetic_scan(true, 200);
    for cell in &r.cells {
        let t = &cell.t;
        let a = qi(2) - t;
        let b = qi(6) * t - qi(2) * t * t - qi(2);
        let c0 = qi(2) * t - t * t * t;
        let disc = &b * &b - qi(4) * &a * &c0;
        let unstable = disc.is_positive() && b.is_negative();
        if unstable {
            assert!(-&b / (qi(2) * &a) < q(7, 5) - t);
        }
        assert_eq!(cell.verdict.is_unstable(), unstable, "t = {t}");
        assert_eq!(cell.verdict == CellVerdict::ConditionalUnstable, unstable);
    }
}

#[test]
fn scan_output_is_deterministic_and_reverifies() {
    let e = catalog::get("dp1").unwrap();
    let d = vec![NamedClass::new("E", DivClass::from_ints(&[0, 1]))];
    let run = || cone_scan(&e.model, &DivClass::from_ints(&[3, -1]), &DivClass::from_ints(&[6, -1]), 50, &d, Mode::Strict).unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_svg(), b.to_svg());
    assert_eq!(a.to_csv().lines().count(), 1 + 49);
    for cell in a.cells.iter().filter(|c| c.verdict.is_unstable()) {
        assert!(destabilizes(&e.model, &cell.polarisation, &d[0].cls, Mode::Strict).unwrap().is_unstable());
    }
}

#[test]
fn dp1_search_finds_only_e() {
    let e = catalog::get("dp1").unwrap();
    let r = search(&e.model, &DivClass::from_ints(&[3, -1]), &default_generators(&e.model), 5, Mode::Strict, DEFAULT_CAP).unwrap();
    assert_eq!(r.candidates, 35);
    let hits: Vec<_> = r.hits.iter().map(|h| h.class.clone()).collect();
    assert_eq!(hits, vec![DivClass::from_ints(&[0, 1])]);
    // 2E: N(c) = 8c^2 - 6c - 12 is negative only past c ~ 1.66, beyond eps(2E) = 1
    assert!(!destabilizes(&e.model, &DivClass::from_ints(&[3, -1]), &DivClass::from_ints(&[0, 2]), Mode::Strict)
        .unwrap()
        .is_unstable());
}

#[test]
fn searches_with_no_destabiliser() {
    let e = catalog::get("dp2").unwrap();
    let r = search(&e.model, e.polarisation_named("-K").unwrap(), &default_generators(&e.model), 15, Mode::Strict, DEFAULT_CAP)
        .unwrap();
    assert_eq!(r.summary(), "0 destabilisers among 4095 candidates");
    assert!(!r.conditional);
    let e = catalog::get("verygen-product(2,2)").unwrap();
    let r = search(&e.model, e.polarisation_named("K").unwrap(), &default_generators(&e.model), 10, Mode::Strict, DEFAULT_CAP)
        .unwrap();
    assert_eq!(r.summary(), "0 destabilisers among 120 candidates");
}
