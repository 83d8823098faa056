use slopestab::catalog;
use slopestab::constructor::{build_certificate, verify_certificate};
use slopestab::format::{parse_certificate, parse_surface, write_certificate, write_surface};
use slopestab::{DivClass, Error};

const HAND_WRITTEN: &str = r#"
# plane blown up at one point, written by hand
name = "my-dp1"
basis = ["H", "E"]
gram = [["1", "0"], ["0", "-1"]]
canonical = "-3H+E"
curves_complete = true
kodaira_nonneg = false
reference_positive_class = "H"

[[curves]]
label = "E"
class = "E"
genus = 0

[[curves]]
label = "L"
class = "H-E"

[[featured_polarisations]]
label = "anti"
class = "-K"
"#;

#[test]
fn hand_written_surface() {
    let f = parse_surface(HAND_WRITTEN).unwrap();
    assert_eq!(f.model.rank(), 2);
    assert_eq!(f.featured_polarisations[0].cls, DivClass::from_ints(&[3, -1]));
    let canonical = write_surface(&f);
    assert_eq!(write_surface(&parse_surface(&canonical).unwrap()), canonical);
}

#[test]
fn diagnostics_carry_positions() {
    let bad = HAND_WRITTEN.replace(r#"[["1", "0"], ["0", "-1"]]"#, r#"[["1", "0"], ["1/2", "-1"]]"#);
    match parse_surface(&bad) {
        Err(Error::Parse { line, col, msg }) => {
            assert_eq!((line, col), (5, 22));
            assert!(msg.contains("not symmetric"));
        }
        other => panic!("{other:?}"),
    }
    let bad = HAND_WRITTEN.replace(r#"class = "H-E""#, r#"class = "H-X""#);
    match parse_surface(&bad) {
        Err(Error::Parse { line, msg, .. }) => {
            assert_eq!(line, 18);
            assert!(msg.contains("\"H-X\"") || msg.contains("X"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_surface("name = 3"), Err(Error::Parse { line: 1, .. })));
    let bad = HAND_WRITTEN.replace("genus = 0", "genus = 1");
    assert!(matches!(parse_surface(&bad), Err(Error::GenusMismatch { .. })));
}

#[test]
fn certificate_files_round_trip() {
    for (key, h) in [("synthetic-highgenus", "A"), ("blownup-quartic(17)", "5H-E")] {
        let e = catalog::get(key).unwrap();
        let cert = build_certificate(&e.model, e.config_named("C").unwrap(), e.polarisation_named(h).unwrap()).unwrap();
        let text = write_certificate(&cert);
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(verify_certificate(&back), Ok(()));
        assert_eq!(write_certificate(&back), text);
        let tampered = text.replace("c = \"1/2\"", "c = \"3/2\"");
        if tampered != text {
            assert!(verify_certificate(&parse_certificate(&tampered).unwrap()).is_err());
        }
    }
}
