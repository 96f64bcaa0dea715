//! Regenerates `data/witnesses.json`.
//!
//! Complex witnesses come from the worked examples where available, then
//! from the `(L)` ansatz, then from the numerical search with seed 0. Each
//! is kept only if its moduli bound equals the table column.

use nilcalc::catalog::{load_catalog, Provenance, StoredWitness};
use nilcalc::complex::{moduli_bound, AlmostComplexStructure, JFile};
use nilcalc::search::{minimize, solve_ll_ansatz, SearchOptions};
use nilcalc::symplectic::exists_symplectic;
use nilcalc::{GaussianRational, LieAlgebraSpec, Rational};

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
}

/// Coframe rows `e^a + i e^b`.
fn paired(pairs: &[(usize, usize)]) -> AlmostComplexStructure<Rational> {
    let rows = pairs
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![g(0, 0); 6];
            row[a - 1] = g(1, 0);
            row[b - 1] = g(0, 1);
            row
        })
        .collect();
    AlmostComplexStructure::from_coframe(rows).unwrap()
}

fn known_example(tuple: &str) -> Option<AlmostComplexStructure<Rational>> {
    match tuple {
        "(0,0,12,13,23,14+25)" => Some(paired(&[(1, 2), (4, 5), (3, 6)])),
        "(0,0,0,0,13+42,14+23)" => Some(paired(&[(1, 2), (3, 4), (5, 6)])),
        _ => None,
    }
}

fn main() {
    let mut store = Vec::new();
    for row in load_catalog() {
        let spec = LieAlgebraSpec::parse(&row.tuple).unwrap();
        let symplectic = exists_symplectic(&spec).unwrap().witness.map(|s| s.to_string());
        let mut complex = None;
        if let Some(want) = row.dim_c {
            let fits = |j: &AlmostComplexStructure<Rational>| moduli_bound(&spec, j).ok() == Some(want);
            if let Some(j) = known_example(&row.tuple).filter(|j| fits(j)) {
                complex = Some((Provenance::KnownExample, j));
            }
            if complex.is_none() {
                if let Ok(ws) = solve_ll_ansatz(&spec) {
                    complex = ws.into_iter().map(|w| w.acs).find(|j| fits(j)).map(|j| (Provenance::LlAnsatz, j));
                }
            }
            if complex.is_none() {
                let report = minimize(&spec, &SearchOptions::default()).unwrap();
                complex = report.witness.map(|w| w.acs).filter(|j| fits(j)).map(|j| (Provenance::Search, j));
            }
            if complex.is_none() {
                eprintln!("no witness for {}", row.tuple);
            }
        }
        store.push(StoredWitness {
            tuple: row.tuple.clone(),
            provenance: complex.as_ref().map(|c| c.0),
            complex: complex.as_ref().map(|c| JFile::from_coframe(&c.1)),
            symplectic,
        });
    }
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/witnesses.json");
    let lines: Vec<String> = store.iter().map(|w| format!("  {}", serde_json::to_string(w).unwrap())).collect();
    std::fs::write(&path, format!("[\n{}\n]\n", lines.join(",\n"))).unwrap();
    println!("wrote {}", path.display());
}
