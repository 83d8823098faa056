//! Scans along a segment `L_t = (1-t)La + tLb` of the nef cone, testing a
//! fixed list of divisors at each interior grid point.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::write_class;
use crate::lattice::{DivClass, NamedClass, SurfaceModel};
use crate::rational::{fmt_q, qi, Q};
use crate::slope::{decide, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellVerdict {
    Stable,
    Unstable,
    /// As above, but relying on a roster not known to be complete.
    ConditionalStable,
    ConditionalUnstable,
}

impl CellVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CellVerdict::Stable => "stable",
            CellVerdict::Unstable => "unstable",
            CellVerdict::ConditionalStable => "conditional-stable",
            CellVerdict::ConditionalUnstable => "conditional-unstable",
        }
    }

    pub fn is_unstable(self) -> bool {
        matches!(self, CellVerdict::Unstable | CellVerdict::ConditionalUnstable)
    }

    fn colour(self) -> &'static str {
        match self {
            CellVerdict::Stable => "#2e7d32",
            CellVerdict::Unstable => "#c62828",
            CellVerdict::ConditionalStable => "#a5d6a7",
            CellVerdict::ConditionalUnstable => "#ef9a9a",
        }
    }
}

const ALL_VERDICTS: [CellVerdict; 4] =
    [CellVerdict::Stable, CellVerdict::Unstable, CellVerdict::ConditionalStable, CellVerdict::ConditionalUnstable];

#[derive(Clone, Debug, PartialEq)]
pub struct ScanCell {
    pub t: Q,
    pub polarisation: DivClass,
    pub verdict: CellVerdict,
    /// First listed divisor that destabilises, with its witness `c`.
    pub witness: Option<(String, Q)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub basis: Vec<String>,
    pub la: DivClass,
    pub lb: DivClass,
    pub grid: u32,
    pub mode: Mode,
    pub divisors: Vec<NamedClass>,
    pub cells: Vec<ScanCell>,
}

fn check_endpoint(s: &SurfaceModel, l: &DivClass, name: &str) -> Result<()> {
    if s.is_ample(l)?.passes() || s.is_nef(l)?.passes() {
        Ok(())
    } else {
        Err(Error::InvalidPolarisation(format!("endpoint {name} is neither ample nor nef")))
    }
}

/// Cells at `t = k/grid` for `k = 1 .. grid-1`.
pub fn cone_scan(
    s: &SurfaceModel,
    la: &DivClass,
    lb: &DivClass,
    grid: u32,
    divisors: &[NamedClass],
    mode: Mode,
) -> Result<ScanReport> {
    s.check_dim(la)?;
    s.check_dim(lb)?;
    for d in divisors {
        s.check_dim(&d.cls)?;
    }
    if grid < 2 {
        return Err(Error::Invalid("grid must be at least 2".into()));
    }
    if divisors.is_empty() {
        return Err(Error::Invalid("no divisors to test".into()));
    }
    check_endpoint(s, la, "La")?;
    check_endpoint(s, lb, "Lb")?;
    let conditional = !s.curves_complete();
    let cells = (1..grid)
        .into_par_iter()
        .map(|k| {
            let t = Q::new(k.into(), grid.into());
            let l = la.scale(&(qi(1) - &t)).add_scaled(&t, lb);
            let mut witness = None;
            for d in divisors {
                if s.pair(&l, &d.cls)? <= qi(0) {
                    continue;
                }
                let v = decide(s, &l, &d.cls, mode)?;
                if let Some(c) = v.witness_c {
                    witness = Some((d.label.clone(), c));
                    break;
                }
            }
            let verdict = match (witness.is_some(), conditional) {
                (false, false) => CellVerdict::Stable,
                (true, false) => CellVerdict::Unstable,
                (false, true) => CellVerdict::ConditionalStable,
                (true, true) => CellVerdict::ConditionalUnstable,
            };
            Ok(ScanCell { t, polarisation: l, verdict, witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        basis: s.basis().to_vec(),
        la: la.clone(),
        lb: lb.clone(),
        grid,
        mode,
        divisors: divisors.to_vec(),
        cells,
    })
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,polarisation,verdict,witness_divisor,witness_c\n");
        for c in &self.cells {
            let (wd, wc) = match &c.witness {
                Some((d, x)) => (d.as_str(), fmt_q(x)),
                None => ("", String::new()),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt_q(&c.t),
                write_class(&self.basis, &c.polarisation),
                c.verdict.as_str(),
                wd,
                wc
            );
        }
        out
    }

    /// One rectangle per cell, left to right in `t`, with a legend.
    pub fn to_svg(&self) -> String {
        const CELL: usize = 12;
        const HEIGHT: usize = 40;
        const MARGIN: usize = 10;
        let n = self.cells.len();
        let width = 2 * MARGIN + (n * CELL).max(4 * 150);
        let height = 2 * MARGIN + HEIGHT + 90;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"##
        );
        let _ = writeln!(out, r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##);
        for (i, c) in self.cells.iter().enumerate() {
            let x = MARGIN + i * CELL;
            let _ = writeln!(
                out,
                r##"<rect x="{x}" y="{MARGIN}" width="{CELL}" height="{HEIGHT}" fill="{}" stroke="#ffffff" stroke-width="1"><title>t={} {}</title></rect>"##,
                c.verdict.colour(),
                fmt_q(&c.t),
                c.verdict.as_str()
            );
        }
        let y = MARGIN + HEIGHT + 18;
        let _ = writeln!(
            out,
            r##"<text x="{MARGIN}" y="{y}" font-family="monospace" font-size="11">La = {}   Lb = {}   grid = {}</text>"##,
            xml_escape(&write_class(&self.basis, &self.la)),
            xml_escape(&write_class(&self.basis, &self.lb)),
            self.grid
        );
        let y = y + 16;
        for (i, v) in ALL_VERDICTS.iter().enumerate() {
            let x = MARGIN + i * 150;
            let _ = writeln!(out, r##"<rect x="{x}" y="{y}" width="12" height="12" fill="{}"/>"##, v.colour());
            let _ = writeln!(
                out,
                r##"<text x="{}" y="{}" font-family="monospace" font-size="11">{}</text>"##,
                x + 16,
                y + 10,
                v.as_str()
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
