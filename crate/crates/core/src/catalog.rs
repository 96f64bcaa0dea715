//! The 34 six-dimensional real nilpotent Lie algebras, with stored witnesses
//! and per-row verification.

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebraSpec;
use crate::cohomology::{betti, consistency_report};
use crate::complex::{
    canonical_frame_6d, deformation_kernel, is_integrable, moduli_bound, ExactStructure, FrameCase, JFile,
};
use crate::error::{Error, Result};
use crate::exterior::parse_form;
use crate::scalar::Rational;
use crate::search::{minimize, Outcome, SearchOptions};
use crate::symplectic::{exists_symplectic, is_symplectic, moduli_dim_symplectic};

const CATALOG_CSV: &str = include_str!("../data/catalog.csv");
const WITNESSES_JSON: &str = include_str!("../data/witnesses.json");

pub const CSV_HEADER: &str = "tuple,b1,b2,six_minus_s,decomp,magnin,cfgu,dimC,dimC_asterisk,dimS";

/// The algebras admitting neither complex nor symplectic structures.
pub const NEITHER: [&str; 5] = [
    "(0,0,12,13,14+23,34+52)",
    "(0,0,12,13,14,34+52)",
    "(0,0,0,12,13,14+35)",
    "(0,0,0,12,23,14+35)",
    "(0,0,0,0,12,15+34)",
];

/// A printed entry that disagrees with the value forced by its own
/// definition. The embedded table keeps the printed value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub tuple: &'static str,
    pub column: &'static str,
    pub printed: &'static str,
    pub recomputed: &'static str,
}

pub const ERRATA: [Erratum; 2] = [
    // dim S = b_2 + rank d = 8 + 3, and e16 + e25 + e34 is symplectic.
    Erratum {
        tuple: "(0,0,0,12,13,23)",
        column: "dimS",
        printed: "9",
        recomputed: "11",
    },
    // The stored witness has the type I frame (0,0,12,0,-14+23,0) with
    // ω = e1+ie2, e3+ie4, e5+ie6.
    Erratum {
        tuple: "(0,0,0,0,12,14+25)",
        column: "dimC_asterisk",
        printed: "true",
        recomputed: "false",
    },
];

pub fn erratum(tuple: &str, column: &str) -> Option<Erratum> {
    ERRATA.iter().copied().find(|e| e.tuple == tuple && e.column == column)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub tuple: String,
    pub b1: usize,
    pub b2: usize,
    pub six_minus_s: usize,
    /// Summand dimensions of a decomposition, e.g. `1+5`; absent when irreducible.
    pub decomp: Option<String>,
    pub magnin: Option<u32>,
    pub cfgu: u32,
    /// Upper bound for `dim_C` of the space of complex structures.
    #[serde(rename = "dimC")]
    pub dim_c: Option<usize>,
    /// No complex structure of type (I).
    #[serde(rename = "dimC_asterisk")]
    pub dim_c_asterisk: bool,
    #[serde(rename = "dimS")]
    pub dim_s: Option<usize>,
}

impl CatalogRow {
    pub fn spec(&self) -> Result<LieAlgebraSpec> {
        LieAlgebraSpec::parse(&self.tuple)
    }

    pub fn is_reducible(&self) -> bool {
        self.decomp.is_some()
    }
}

pub fn load_catalog() -> Vec<CatalogRow> {
    csv::Reader::from_reader(CATALOG_CSV.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .expect("embedded catalog is well formed")
}

pub fn find_row(tuple: &str) -> Option<CatalogRow> {
    load_catalog().into_iter().find(|r| r.tuple == tuple)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    KnownExample,
    LlAnsatz,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredWitness {
    pub tuple: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<JFile>,
    /// A symplectic form written like `e16+e25+e34`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<String>,
}

pub fn witness_store() -> Vec<StoredWitness> {
    serde_json::from_str(WITNESSES_JSON).expect("embedded witness store is well formed")
}

pub fn stored_witness(tuple: &str) -> Option<StoredWitness> {
    witness_store().into_iter().find(|w| w.tuple == tuple)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub tuple: String,
    pub checks: Vec<Check>,
    /// Moduli bound of the stored complex witness.
    pub moduli_bound: Option<usize>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn show<T: std::fmt::Debug>(x: &Option<T>) -> String {
    match x {
        Some(v) => format!("{v:?}"),
        None => "none".into(),
    }
}

/// Complex witness checks: integrability (both tests), moduli bound against
/// the table, agreement of the two deformation-kernel assemblies, and the
/// frame case on asterisk rows.
fn complex_checks(
    spec: &LieAlgebraSpec,
    row: &CatalogRow,
    j: &crate::complex::AlmostComplexStructure<Rational>,
    checks: &mut Vec<Check>,
) -> Option<usize> {
    match is_integrable(spec, j) {
        Ok(ok) => checks.push(check("complex witness integrable", ok, "Nijenhuis and (0,2) tests")),
        Err(e) => {
            checks.push(check("complex witness integrable", false, e.to_string()));
            return None;
        }
    }
    let bound = moduli_bound(spec, j).ok();
    checks.push(check(
        "moduli bound",
        bound == row.dim_c,
        format!("computed {}, table {}", show(&bound), show(&row.dim_c)),
    ));
    match deformation_kernel(spec, j) {
        Ok(k) => checks.push(check(
            "deformation kernel",
            k.dos_dim.map_or(true, |d| d == k.dim),
            format!("tang {}, dos {}", k.dim, show(&k.dos_dim)),
        )),
        Err(e) => checks.push(check("deformation kernel", false, e.to_string())),
    }
    if row.dim_c_asterisk {
        let case = canonical_frame_6d(spec, j).map(|f| f.case);
        let known = erratum(&row.tuple, "dimC_asterisk").filter(|_| matches!(case, Ok(FrameCase::I)));
        checks.push(check(
            "frame case",
            matches!(case, Ok(FrameCase::II)) || known.is_some(),
            match known {
                Some(_) => "I (recorded erratum)".to_string(),
                None => format!("{case:?}"),
            },
        ));
    }
    bound
}

pub fn verify_row(row: &CatalogRow) -> RowReport {
    let mut checks = Vec::new();
    let mut bound = None;
    let spec = match row.spec() {
        Ok(s) => s,
        Err(e) => {
            checks.push(check("valid", false, e.to_string()));
            return RowReport {
                tuple: row.tuple.clone(),
                checks,
                moduli_bound: None,
            };
        }
    };
    checks.push(check("valid", true, "d² = 0"));
    let filtration = spec.filtration();
    let nilpotent = filtration.as_ref().map_or(false, |f| f.is_nilpotent());
    checks.push(check("nilpotent", nilpotent, ""));
    if let Ok(f) = &filtration {
        let s = f.step;
        checks.push(check(
            "6-s",
            s.map(|s| 6 - s) == Some(row.six_minus_s),
            format!("computed {}, table {}", show(&s.map(|s| 6 - s)), row.six_minus_s),
        ));
    }
    match betti(&spec) {
        Ok(b) => {
            checks.push(check("b1", b.get(1) == row.b1, format!("computed {}, table {}", b.get(1), row.b1)));
            checks.push(check("b2", b.get(2) == row.b2, format!("computed {}, table {}", b.get(2), row.b2)));
        }
        Err(e) => checks.push(check("betti", false, e.to_string())),
    }
    match consistency_report(&spec) {
        Ok(c) => {
            checks.push(check("b3 formula", c.b3_formula, format!("{:?}", c.betti)));
            checks.push(check("dixmier", c.dixmier, "b_i >= 2 for 1 <= i <= 5"));
            checks.push(check("euler", c.euler, ""));
        }
        Err(e) => checks.push(check("consistency", false, e.to_string())),
    }
    let dim_s = moduli_dim_symplectic(&spec).ok().flatten();
    let known = erratum(&row.tuple, "dimS")
        .filter(|e| opt(&row.dim_s) == e.printed && opt(&dim_s) == e.recomputed);
    checks.push(check(
        "dim S",
        dim_s == row.dim_s || known.is_some(),
        match known {
            Some(e) => format!("computed {}, table {} (recorded erratum)", e.recomputed, e.printed),
            None => format!("computed {}, table {}", show(&dim_s), show(&row.dim_s)),
        },
    ));
    let stored = stored_witness(&row.tuple);
    if let Some(text) = stored.as_ref().and_then(|w| w.symplectic.as_ref()) {
        let ok = parse_form(6, text).map_or(false, |s| is_symplectic(&spec, &s));
        checks.push(check("symplectic witness", ok, text.clone()));
    } else if row.dim_s.is_some() {
        let ok = exists_symplectic(&spec)
            .ok()
            .and_then(|r| r.witness)
            .map_or(false, |s| is_symplectic(&spec, &s));
        checks.push(check("symplectic witness", ok, "computed"));
    }
    match stored.as_ref().and_then(|w| w.complex.as_ref()) {
        Some(file) => match file.structure() {
            Ok(ExactStructure::Rational(j)) => bound = complex_checks(&spec, row, &j, &mut checks),
            Ok(ExactStructure::Surd(_)) => {
                checks.push(check("complex witness integrable", false, "stored witnesses are rational"))
            }
            Err(e) => checks.push(check("complex witness integrable", false, e.to_string())),
        },
        None => {
            if row.dim_c.is_some() {
                checks.push(check("complex witness integrable", false, "no stored witness"));
            }
        }
    }
    RowReport {
        tuple: row.tuple.clone(),
        checks,
        moduli_bound: bound,
    }
}

pub fn verify_all() -> Vec<RowReport> {
    use rayon::prelude::*;
    load_catalog().par_iter().map(verify_row).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NeitherEntry {
    pub tuple: String,
    pub symplectic_exists: bool,
    pub cubic_nonzero_coefficients: usize,
    pub search: Outcome,
    pub search_label: &'static str,
    pub restarts: usize,
    /// Both structure columns of the table are dashes.
    pub table_dashes: bool,
}

/// Symplectic nonexistence (exact) and complex search (evidence only) for
/// the algebras admitting neither structure.
pub fn neither_structure_check(opts: &SearchOptions) -> Result<Vec<NeitherEntry>> {
    NEITHER
        .iter()
        .map(|&tuple| {
            let spec = LieAlgebraSpec::parse(tuple)?;
            let symp = exists_symplectic(&spec)?;
            let report = minimize(&spec, opts)?;
            let row = find_row(tuple).ok_or_else(|| Error::Precondition(format!("{tuple} not in catalog")))?;
            Ok(NeitherEntry {
                tuple: tuple.to_string(),
                symplectic_exists: symp.exists,
                cubic_nonzero_coefficients: symp.nonzero_coefficients,
                search: report.outcome.clone(),
                search_label: report.label(),
                restarts: report.restarts_used,
                table_dashes: row.dim_c.is_none() && row.dim_s.is_none(),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

/// Recomputes `b_1`, `b_2`, `6-s` and `dim_R S`, and takes `dim_C` from the
/// moduli bound of each stored witness.
pub fn regenerate_table(format: TableFormat) -> Result<String> {
    let rows: Vec<CatalogRow> = load_catalog()
        .iter()
        .map(|row| {
            let spec = row.spec()?;
            let b = betti(&spec)?;
            let s = spec.filtration()?.step.ok_or(Error::NotNilpotent)?;
            let dim_c = match stored_witness(&row.tuple).and_then(|w| w.complex) {
                Some(file) => match file.structure()? {
                    ExactStructure::Rational(j) => Some(moduli_bound(&spec, &j)?),
                    ExactStructure::Surd(j) => Some(moduli_bound(&spec, &j)?),
                },
                None => None,
            };
            Ok(CatalogRow {
                tuple: row.tuple.clone(),
                b1: b.get(1),
                b2: b.get(2),
                six_minus_s: 6 - s,
                decomp: row.decomp.clone(),
                magnin: row.magnin,
                cfgu: row.cfgu,
                dim_c,
                dim_c_asterisk: row.dim_c_asterisk,
                dim_s: moduli_dim_symplectic(&spec)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(match format {
        TableFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &rows {
                out.push_str(&format!(
                    "\"{}\",{},{},{},{},{},{},{},{},{}\n",
                    r.tuple,
                    r.b1,
                    r.b2,
                    r.six_minus_s,
                    opt(&r.decomp),
                    opt(&r.magnin),
                    r.cfgu,
                    opt(&r.dim_c),
                    r.dim_c_asterisk,
                    opt(&r.dim_s)
                ));
            }
            out
        }
        TableFormat::Text => {
            let dash = |s: String| if s.is_empty() { "-".to_string() } else { s };
            let mut out = format!(
                "{:>2} {:>2} {:>3}  {:<26} {:<12} {:>2} {:>4} {:>4} {:>4}\n",
                "b1", "b2", "6-s", "structure", "decomp", "M", "CFGU", "dimC", "dimS"
            );
            for r in &rows {
                let c = opt(&r.dim_c) + if r.dim_c_asterisk && r.dim_c.is_some() { "*" } else { "" };
                out.push_str(&format!(
                    "{:>2} {:>2} {:>3}  {:<26} {:<12} {:>2} {:>4} {:>4} {:>4}\n",
                    r.b1,
                    r.b2,
                    r.six_minus_s,
                    r.tuple,
                    opt(&r.decomp),
                    opt(&r.magnin),
                    r.cfgu,
                    dash(c),
                    dash(opt(&r.dim_s))
                ));
            }
            out
        }
    })
}

/// The embedded table in CSV form.
pub fn embedded_csv() -> &'static str {
    CATALOG_CSV
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let rows = load_catalog();
        assert_eq!(rows.len(), 34);
        assert_eq!(rows.iter().filter(|r| r.is_reducible()).count(), 10);
        let r = find_row("(0,0,12,13,23,14+25)").unwrap();
        assert_eq!((r.b1, r.b2, r.six_minus_s, r.dim_c, r.dim_c_asterisk, r.dim_s), (2, 4, 2, Some(4), true, Some(8)));
        let r = find_row("(0,0,0,0,0,0)").unwrap();
        assert_eq!((r.b1, r.b2, r.six_minus_s, r.dim_c, r.dim_s), (6, 15, 5, Some(9), Some(15)));
    }

    #[test]
    fn lexicographic_order() {
        let keys: Vec<_> = load_catalog().iter().map(|r| (r.b1, r.b2, r.six_minus_s)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn neither_rows_have_dashes() {
        for t in NEITHER {
            let r = find_row(t).unwrap();
            assert!(r.dim_c.is_none() && r.dim_s.is_none(), "{t}");
        }
    }
}
