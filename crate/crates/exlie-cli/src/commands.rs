use std::path::Path;

use exlie::expauto::{canonical, closed_form_report, recursion_report, Exponentiator};
use exlie::extract::{self, Extraction, Extractor, Status};
use exlie::extremal::find_hyperbolic_pair;
use exlie::grading::{Grading5, DEGREES};
use exlie::json::{self as codec, AlgebraJson};
use exlie::{CartanType, Closure, ExlieError, LieAlgebra, Report, Sampling};
use exlie_field::{Field, FieldDescriptor, FieldKind, FiniteField, Rationals};
use serde_json::{json, Value};

use crate::{CliError, Outcome};

/// Runs `$body` with `$f` bound to the concrete field described by `$desc`.
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc.kind {
            FieldKind::Rational => {
                let $f = Rationals;
                $body
            }
            _ => {
                let $f = FiniteField::from_descriptor(&$desc)?;
                $body
            }
        }
    };
}

fn parse_field(spec: &str) -> Result<FieldDescriptor, CliError> {
    Ok(spec.parse::<FieldDescriptor>()?)
}

fn parse_type(label: &str) -> Result<CartanType, CliError> {
    label.parse::<CartanType>().map_err(|e| CliError::Config(format!("bad type {label:?}: {e}")))
}

fn read_algebra(path: &Path) -> Result<AlgebraJson, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("values serialize");
    std::fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.into(), source })
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
}

fn report_json(report: &Report) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn summarize(report: &Report) -> String {
    let total = report.checks.len();
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        format!("{total}/{total} checks passed")
    } else {
        format!("{}/{total} checks passed; failed: {}", total - failed.len(), failed.join("; "))
    }
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Ok
    } else {
        Outcome::Mismatch
    }
}

pub fn build(label: &str, field: &str, output: Option<&Path>) -> Result<Outcome, CliError> {
    let ty = parse_type(label)?;
    let desc = parse_field(field)?;
    with_field!(desc, f => {
        let l = LieAlgebra::chevalley(ty, f)?;
        if let Some(path) = output {
            write_json(path, &codec::encode_algebra(&l))?;
        }
        // `chevalley` refuses tables that fail the Jacobi identity.
        emit(&json!({
            "type": ty.to_string(),
            "field": desc.spec(),
            "modulus": desc.modulus_string(),
            "dim": l.dim(),
            "verify_lie": "pass",
        }));
        eprintln!("dim={} verify_lie=pass", l.dim());
        Ok(Outcome::Ok)
    })
}

fn load<F: Field>(f: F, json: &AlgebraJson) -> Result<LieAlgebra<F>, CliError> {
    Ok(codec::decode_algebra(f, json)?)
}

pub fn verify(input: &Path) -> Result<Outcome, CliError> {
    let file = read_algebra(input)?;
    let desc = file.descriptor()?;
    with_field!(desc, f => {
        let l = load(f, &file)?;
        let mut report = Report::new();
        let check = l.verify_lie();
        report.push_detail("antisymmetry", check.antisymmetry_violation.is_none(), format!("{:?}", check.antisymmetry_violation));
        report.push_detail("Jacobi identity", check.jacobi_violation.is_none(), format!("{:?}", check.jacobi_violation));
        let simple = (0..l.dim().min(1)).all(|i| l.generated_subspace(&[l.unit(i)], Closure::Ideal).dim() == l.dim());
        report.push("ideal generated by b_0 is everything", simple);
        emit(&json!({ "dim": l.dim(), "field": desc.spec(), "report": report_json(&report) }));
        eprintln!("dim={} {}", l.dim(), summarize(&report));
        Ok(outcome(report.passed()))
    })
}

fn check_pair(pair: &str) -> Result<(), CliError> {
    if pair == "auto" {
        Ok(())
    } else {
        Err(CliError::Config(format!("unsupported --pair {pair:?}; only \"auto\" is available")))
    }
}

pub fn grade(input: &Path, pair: &str) -> Result<Outcome, CliError> {
    check_pair(pair)?;
    let file = read_algebra(input)?;
    let desc = file.descriptor()?;
    with_field!(desc, f => {
        let l = load(f, &file)?;
        let fl = l.field();
        let (x, y) = find_hyperbolic_pair(&l)?;
        let gr = Grading5::new(&l, &x, &y)?;
        let report = gr.verify();
        let bases: Vec<Value> = DEGREES
            .iter()
            .map(|&i| json!({ "degree": i, "basis": gr.basis(i).iter().map(|b| codec::sparse(fl, b)).collect::<Vec<_>>() }))
            .collect();
        emit(&json!({
            "dims": gr.dims(),
            "x": codec::sparse(fl, &x.x),
            "y": codec::sparse(fl, &y.x),
            "pieces": bases,
            "report": report_json(&report),
        }));
        eprintln!("dims={:?} {}", gr.dims(), summarize(&report));
        Ok(outcome(report.passed()))
    })
}

pub fn lexp(input: &Path, coords: &str, pair: &str) -> Result<Outcome, CliError> {
    check_pair(pair)?;
    let file = read_algebra(input)?;
    let desc = file.descriptor()?;
    with_field!(desc, f => {
        let l = load(f, &file)?;
        let fl = l.field();
        let (x, y) = find_hyperbolic_pair(&l)?;
        let gr = Grading5::new(&l, &x, &y)?;
        let c = codec::parse_coords(fl, coords)?;
        let d1 = gr.dims()[3];
        if c.len() != d1 {
            return Err(CliError::Config(format!("--l needs {d1} coordinates on L_1, got {}", c.len())));
        }
        let lv = gr.combine(&c, 1);
        let product = Exponentiator::new(&gr)?.l_exponential(&lv)?;
        let mut report = recursion_report(&gr, &product);
        // Outside characteristic 2 the output is normalized to q = ad_l^2 / 2.
        let normalized = fl.characteristic() != 2;
        let alpha = if normalized { canonical(&gr, &product)? } else { product.clone() };
        let table = alpha.table(&gr)?;
        report.push("automorphism", l.is_homomorphism(&alpha.auto.images(&l)));
        if !matches!(fl.characteristic(), 2 | 3) {
            report.extend(closed_form_report(&gr, &alpha)?);
        }
        let parts = |pick: fn(&exlie::expauto::Parts<_>) -> &_| -> Vec<Value> {
            DEGREES.iter().flat_map(|&i| table.on_basis(i).iter().map(move |p| codec::sparse(fl, pick(p)))).collect()
        };
        emit(&json!({
            "l": codec::vector(fl, &c),
            "summands": product.summands.len(),
            "normalized": normalized,
            "matrix": codec::matrix(fl, &alpha.auto.matrix(&l).row_vecs()),
            "q_on_basis": parts(|p| &p.q),
            "n_on_basis": parts(|p| &p.n),
            "v_on_basis": parts(|p| &p.v),
            "report": report_json(&report),
        }));
        eprintln!("summands={} {}", product.summands.len(), summarize(&report));
        Ok(outcome(report.passed()))
    })
}

fn status_outcome(status: Status) -> Outcome {
    match status {
        Status::Verified => Outcome::Ok,
        Status::Mismatch => Outcome::Mismatch,
        Status::Stopped => Outcome::Inapplicable,
    }
}

fn describe(ex: &Extraction) -> String {
    let dims: Vec<String> = ex.dims.iter().map(|(n, d)| format!("{n}={d}")).collect();
    let mut line = format!("{}: {}; {}", ex.kind, dims.join(" "), summarize(&ex.report));
    if let Some(reason) = &ex.stopped {
        line.push_str(&format!("; stopped: {reason}"));
    }
    line
}

pub fn extract(kind: &str, input: &Path, output: Option<&Path>, sampling: Sampling) -> Result<Outcome, CliError> {
    if !extract::kinds().contains(&kind) {
        return Err(CliError::Config(format!("unknown kind {kind:?}; expected one of {:?}", extract::kinds())));
    }
    let file = read_algebra(input)?;
    let desc = file.descriptor()?;
    with_field!(desc, f => {
        let ex = extract::find::<_>(kind).expect("kind checked above");
        let l = load(f, &file)?;
        let extraction = ex.extract(&l, sampling)?;
        let mut out = extraction.to_json();
        if let Some(path) = output {
            write_json(path, &out)?;
            if let Value::Object(map) = &mut out {
                map.remove("structure");
            }
        }
        emit(&out);
        eprintln!("{}", describe(&extraction));
        Ok(status_outcome(extraction.status()))
    })
}

fn table_rows<F: Field>(
    ex: &dyn Extractor<F>,
    f: &F,
    dims_only: bool,
    sampling: Sampling,
) -> Result<(Vec<Value>, bool), CliError> {
    let mut all_ok = true;
    let mut rows = Vec::new();
    let [c0, c1, c2] = ex.columns();
    eprintln!("{:>4}  {:>10} {:>10} {:>10}  status", "type", c0, c1, c2);
    for known in ex.known() {
        let l = LieAlgebra::chevalley(parse_type(known.cartan_type)?, f.clone())?;
        let result = if dims_only {
            ex.dims(&l).map(|d| (d, "not run".to_string(), true))
        } else {
            ex.extract(&l, sampling).map(|e| {
                let d: Vec<usize> = e.dims.iter().map(|(_, v)| *v).collect();
                let status = match (&e.stopped, e.status()) {
                    (Some(r), _) => format!("stopped: {r}"),
                    (None, Status::Verified) => format!("verified ({} checks)", e.report.checks.len()),
                    (None, _) => format!(
                        "FAILED: {}",
                        e.report.failures().map(|c| c.name.as_str()).collect::<Vec<_>>().join("; ")
                    ),
                };
                ([d[0], d[1], d[2]], status, e.status() != Status::Mismatch)
            })
        };
        let row = match result {
            Ok((computed, status, verified)) => {
                let matches = computed == known.dims;
                all_ok &= matches && verified;
                let note = if matches { String::new() } else { format!(" expected {:?}", known.dims) };
                eprintln!(
                    "{:>4}  {:>10} {:>10} {:>10}  {status}{note}",
                    known.cartan_type, computed[0], computed[1], computed[2]
                );
                json!({
                    "type": known.cartan_type,
                    "expected": known.dims,
                    "computed": computed,
                    "match": matches,
                    "verification": status,
                })
            }
            Err(ExlieError::Inapplicable { reason }) => {
                eprintln!("{:>4}  gated: {reason}", known.cartan_type);
                json!({ "type": known.cartan_type, "expected": known.dims, "gated": reason })
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(row);
    }
    Ok((rows, all_ok))
}

pub fn tables(field: &str, dims_only: bool, only: Option<&str>, sampling: Sampling) -> Result<Outcome, CliError> {
    if let Some(kind) = only {
        if !extract::kinds().contains(&kind) {
            return Err(CliError::Config(format!("unknown kind {kind:?}; expected one of {:?}", extract::kinds())));
        }
    }
    let desc = parse_field(field)?;
    with_field!(desc, f => {
        let mut tables = Vec::new();
        let mut all_ok = true;
        for ex in extract::registry::<_>() {
            if only.is_some_and(|k| k != ex.kind()) {
                continue;
            }
            eprintln!("{} over {}", ex.kind(), desc.spec());
            let (rows, ok) = table_rows(ex.as_ref(), &f, dims_only, sampling)?;
            all_ok &= ok;
            tables.push(json!({ "kind": ex.kind(), "columns": ex.columns(), "rows": rows }));
        }
        emit(&json!({ "field": desc.spec(), "modulus": desc.modulus_string(), "tables": tables, "all_match": all_ok }));
        Ok(outcome(all_ok))
    })
}
