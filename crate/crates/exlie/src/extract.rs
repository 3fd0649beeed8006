//! Named extraction pipelines, looked up by kind.
//!
//! Each [`Extractor`] knows how to read the three table dimensions off an
//! algebra cheaply and how to run its full pipeline with verification and
//! a JSON export. The command-line front end drives both through
//! [`registry`].

use exlie_field::Field;
use exlie_linalg::vector;
use serde_json::{json, Value};

use crate::algebra::LieAlgebra;
use crate::cns::{base_point, HexFrame};
use crate::extremal::find_hyperbolic_pair;
use crate::grading::Grading5;
use crate::json;
use crate::qa::{QuadAlgebra, QuadFrame};
use crate::report::{Report, Sampling};
use crate::{ExlieError, Result};

/// One row of a known dimension table: a Cartan type label and three
/// dimensions in the order of [`Extractor::columns`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownRow {
    pub cartan_type: &'static str,
    pub dims: [usize; 3],
}

/// How an extraction ended when the pipeline itself ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    Mismatch,
    /// The pipeline stopped before its final structure, for the recorded
    /// reason; the partial report is still available.
    Stopped,
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub kind: &'static str,
    pub dims: Vec<(&'static str, usize)>,
    pub structure: Option<Value>,
    pub report: Report,
    pub stopped: Option<String>,
}

impl Extraction {
    pub fn status(&self) -> Status {
        match (&self.stopped, self.report.passed()) {
            (Some(_), _) => Status::Stopped,
            (None, true) => Status::Verified,
            (None, false) => Status::Mismatch,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = serde_json::Map::new();
        out.insert("kind".into(), json!(self.kind));
        for (name, d) in &self.dims {
            out.insert((*name).into(), json!(d));
        }
        out.insert(
            "status".into(),
            json!(match self.status() {
                Status::Verified => "verified",
                Status::Mismatch => "mismatch",
                Status::Stopped => "inapplicable",
            }),
        );
        if let Some(reason) = &self.stopped {
            out.insert("reason".into(), json!(reason));
        }
        if let Some(s) = &self.structure {
            out.insert("structure".into(), s.clone());
        }
        out.insert("report".into(), serde_json::to_value(&self.report).expect("reports serialize"));
        Value::Object(out)
    }
}

pub trait Extractor<F: Field>: Send + Sync {
    fn kind(&self) -> &'static str;

    /// Names of the three dimensions reported by [`Self::dims`].
    fn columns(&self) -> [&'static str; 3];

    /// Split types the pipeline applies to, with their known dimensions.
    fn known(&self) -> &'static [KnownRow];

    /// The three dimensions, from the frame alone.
    fn dims(&self, l: &LieAlgebra<F>) -> Result<[usize; 3]>;

    /// Runs the full pipeline with every verification suite.
    fn extract(&self, l: &LieAlgebra<F>, sampling: Sampling) -> Result<Extraction>;
}

pub fn registry<F: Field>() -> Vec<Box<dyn Extractor<F>>> {
    vec![Box::new(CnsExtractor), Box::new(QaExtractor)]
}

pub fn find<F: Field>(kind: &str) -> Option<Box<dyn Extractor<F>>> {
    registry().into_iter().find(|e| e.kind() == kind)
}

pub fn kinds() -> [&'static str; 2] {
    ["cns", "qa"]
}

/// Cubic norm structures from the grading of a hyperbolic pair.
pub struct CnsExtractor;

const CNS_KNOWN: &[KnownRow] = &[
    KnownRow { cartan_type: "G2", dims: [14, 1, 2] },
    KnownRow { cartan_type: "D4", dims: [28, 3, 4] },
    KnownRow { cartan_type: "F4", dims: [52, 6, 10] },
    KnownRow { cartan_type: "E6", dims: [78, 9, 18] },
    KnownRow { cartan_type: "E7", dims: [133, 15, 37] },
    KnownRow { cartan_type: "E8", dims: [248, 27, 80] },
];

/// Pairs of `J` basis vectors checked through the extremal construction.
const DIRECT_PAIRS: usize = 45;

fn prefixed(report: Report, prefix: &str) -> Report {
    let mut out = Report { sampling: report.sampling, ..Report::new() };
    for c in report.checks {
        let name = format!("{prefix}{}", c.name);
        match c.detail {
            Some(d) => out.push_detail(name, c.passed, d),
            None => out.push(name, c.passed),
        }
    }
    out
}

impl<F: Field> Extractor<F> for CnsExtractor {
    fn kind(&self) -> &'static str {
        "cns"
    }

    fn columns(&self) -> [&'static str; 3] {
        ["dimL", "dimJ", "dimCenter"]
    }

    fn known(&self) -> &'static [KnownRow] {
        CNS_KNOWN
    }

    fn dims(&self, l: &LieAlgebra<F>) -> Result<[usize; 3]> {
        let (x, y) = find_hyperbolic_pair(l)?;
        let gr = Grading5::new(l, &x, &y)?;
        let frame = HexFrame::search(&gr)?;
        Ok([l.dim(), frame.dim_j(), frame.dim_center()])
    }

    fn extract(&self, l: &LieAlgebra<F>, sampling: Sampling) -> Result<Extraction> {
        let f = l.field();
        let (x, y) = find_hyperbolic_pair(l)?;
        let gr = Grading5::new(l, &x, &y)?;
        let mut report = Report::sampled(sampling);
        report.extend(gr.verify());
        let frame = HexFrame::search(&gr)?;
        report.extend(frame.report().clone());
        let tables = frame.twin_tables()?;
        report.extend(frame.twin_report(&tables, sampling, DIRECT_PAIRS)?);
        report.extend(frame.bracket_report(&tables));
        let dims = vec![("dimL", l.dim()), ("dimJ", frame.dim_j()), ("dimCenter", frame.dim_center())];

        let based = match base_point(&frame, &tables, sampling) {
            Ok(b) => b,
            Err(ExlieError::Inapplicable { reason }) => {
                let structure = json!({
                    "dimJ": tables.dim,
                    "twin": {
                        "N_cubic_coeffs": cubic_terms(f, &tables.norm_form(f).terms),
                        "N_prime_cubic_coeffs": cubic_terms(f, &tables.norm_p_form(f).terms),
                    },
                });
                return Ok(Extraction { kind: "cns", dims, structure: Some(structure), report, stopped: Some(reason) });
            }
            Err(e) => return Err(e),
        };
        report.extend(based.report.clone());
        let cns = based.structure()?;
        report.extend(cns.axioms(sampling));

        let mut rng = sampling.rng(0x150);
        let dim = cns.dim();
        let d = (0..sampling.samples * 4)
            .map(|_| (0..dim).map(|_| f.random(&mut rng)).collect::<Vec<_>>())
            .find(|d| !f.is_zero(&cns.norm(d)) && *d != cns.unit());
        match d {
            Some(d) => report.extend(prefixed(cns.isotope(&d)?.axioms(sampling), "isotope: ")),
            None => report.push_detail("isotope: axioms", true, "no invertible sample besides the unit"),
        }

        let structure = json!({
            "dimJ": dim,
            "base_point": json::vector(f, cns.unit()),
            "T": json::matrix(f, cns.trace_table()),
            "cross": json::tensor(f, cns.cross_table()),
            "sharp_basis": json::matrix(f, cns.sharp_table()),
            "N_cubic_coeffs": cubic_terms(f, &cns.norm_form().terms),
        });
        Ok(Extraction { kind: "cns", dims, structure: Some(structure), report, stopped: None })
    }
}

fn cubic_terms<F: Field>(f: &F, terms: &[([usize; 3], F::Elem)]) -> Value {
    Value::Array(terms.iter().map(|(m, c)| json!([m, f.format(c)])).collect())
}

/// Quadrangular algebras from a symplectic quadruple of extremal elements.
pub struct QaExtractor;

const QA_KNOWN: &[KnownRow] = &[
    KnownRow { cartan_type: "F4", dims: [4, 5, 12] },
    KnownRow { cartan_type: "E6", dims: [6, 8, 18] },
    KnownRow { cartan_type: "E7", dims: [8, 16, 33] },
    KnownRow { cartan_type: "E8", dims: [12, 32, 68] },
];

impl<F: Field> Extractor<F> for QaExtractor {
    fn kind(&self) -> &'static str {
        "qa"
    }

    fn columns(&self) -> [&'static str; 3] {
        ["dimV", "dimX", "dimCenter"]
    }

    fn known(&self) -> &'static [KnownRow] {
        QA_KNOWN
    }

    fn dims(&self, l: &LieAlgebra<F>) -> Result<[usize; 3]> {
        let frame = QuadFrame::search(l)?;
        Ok([frame.dim_v(), frame.dim_x(), frame.dim_center()])
    }

    fn extract(&self, l: &LieAlgebra<F>, sampling: Sampling) -> Result<Extraction> {
        let f = l.field();
        let frame = QuadFrame::search(l)?;
        let dims = vec![("dimV", frame.dim_v()), ("dimX", frame.dim_x()), ("dimCenter", frame.dim_center())];
        let mut report = Report::sampled(sampling);
        report.extend(frame.report().clone());
        let qa = QuadAlgebra::new(&frame, sampling)?;
        report.extend(qa.verify(sampling)?);

        let (dv, dx) = (qa.dim_v(), qa.dim_x());
        let unit_x = |i: usize| vector::unit(f, dx, i);
        let unit_v = |i: usize| vector::unit(f, dv, i);
        let gamma: Vec<Vec<F::Elem>> =
            (0..dx).map(|i| (0..dx).map(|j| qa.gamma(&unit_x(i), &unit_x(j))).collect()).collect();
        let mut phi_samples = Vec::new();
        for i in 0..dx.min(2) {
            for j in 0..dv.min(2) {
                let phi = qa.phi(&unit_x(i), &unit_v(j))?;
                phi_samples.push(json!({
                    "a": json::vector(f, &unit_x(i)),
                    "v": json::vector(f, &unit_v(j)),
                    "phi": json::scalar(f, &phi),
                }));
            }
        }
        let structure = json!({
            "dimV": dv,
            "dimX": dx,
            "Q_basis": json::vector(f, qa.q_table()),
            "T": json::matrix(f, qa.t_table()),
            "e": json::vector(f, qa.e()),
            "delta": json::vector(f, qa.delta()),
            "dot": json::tensor(f, qa.dot_table()),
            "h": json::tensor(f, qa.h_table()),
            "theta_basis": json::tensor(f, qa.theta_table()),
            "gamma": json::matrix(f, &gamma),
            "phi_samples": phi_samples,
        });
        Ok(Extraction { kind: "qa", dims, structure: Some(structure), report, stopped: None })
    }
}

/// Rows of a dimension table over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowOutcome {
    Computed([usize; 3]),
    Gated(String),
}

/// Fills in [`Extractor::dims`] for every known row, building each split
/// algebra with `build`. Inapplicable pipelines are gated with their reason.
pub fn dimension_table<F: Field>(
    ex: &dyn Extractor<F>,
    build: impl Fn(&str) -> Result<LieAlgebra<F>>,
) -> Result<Vec<(KnownRow, RowOutcome)>> {
    ex.known()
        .iter()
        .map(|row| {
            let l = build(row.cartan_type)?;
            match ex.dims(&l) {
                Ok(d) => Ok((*row, RowOutcome::Computed(d))),
                Err(ExlieError::Inapplicable { reason }) => Ok((*row, RowOutcome::Gated(reason))),
                Err(e) => Err(e),
            }
        })
        .collect()
}
