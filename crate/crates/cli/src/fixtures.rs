//! Reference rows for n2 = 2, 3, 5, 7, 11 and their verification.

use std::io::Read;

use cyclic_cubic_core::galois_module::certify;
use cyclic_cubic_core::cubic_field::RhoPrimeCoords;
use cyclic_cubic_core::{analyze, Analysis, CaseTag};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::render::{factored, parse_factored, parse_integer, parse_rational, rational};
use crate::report::rho_prime_coords;

pub const EMBEDDED: &str = include_str!("../fixtures/tables.csv");

pub const FIELDS: [&str; 10] = ["n1", "n2", "DL", "case", "delta", "a0", "a1", "alpha_c", "alpha_rho", "alpha_rhoprime"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub n1: String,
    pub n2: String,
    #[serde(rename = "DL")]
    pub dl: String,
    pub case: String,
    pub delta: String,
    pub a0: String,
    pub a1: String,
    pub alpha_c: String,
    pub alpha_rho: String,
    pub alpha_rhoprime: String,
}

impl FixtureRow {
    pub fn get(&self, field: &str) -> Option<&String> {
        Some(match field {
            "n1" => &self.n1,
            "n2" => &self.n2,
            "DL" => &self.dl,
            "case" => &self.case,
            "delta" => &self.delta,
            "a0" => &self.a0,
            "a1" => &self.a1,
            "alpha_c" => &self.alpha_c,
            "alpha_rho" => &self.alpha_rho,
            "alpha_rhoprime" => &self.alpha_rhoprime,
            _ => return None,
        })
    }

    pub fn get_mut(&mut self, field: &str) -> Option<&mut String> {
        Some(match field {
            "n1" => &mut self.n1,
            "n2" => &mut self.n2,
            "DL" => &mut self.dl,
            "case" => &mut self.case,
            "delta" => &mut self.delta,
            "a0" => &mut self.a0,
            "a1" => &mut self.a1,
            "alpha_c" => &mut self.alpha_c,
            "alpha_rho" => &mut self.alpha_rho,
            "alpha_rhoprime" => &mut self.alpha_rhoprime,
            _ => return None,
        })
    }

    pub fn label(&self) -> String {
        format!("({},{})", self.n1, self.n2)
    }
}

pub fn read_rows<R: Read>(reader: R) -> Result<Vec<FixtureRow>, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let rows = rdr.deserialize().collect::<Result<Vec<FixtureRow>, _>>()?;
    Ok(rows)
}

pub fn embedded_rows() -> Vec<FixtureRow> {
    read_rows(EMBEDDED.as_bytes()).expect("embedded fixtures parse")
}

pub fn write_rows<W: std::io::Write>(rows: &[FixtureRow], w: W) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in rows {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowOutcome {
    pub row: usize,
    pub n1: String,
    pub n2: String,
    pub mismatches: Vec<Mismatch>,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn label(&self) -> String {
        format!("row {} ({},{})", self.row, self.n1, self.n2)
    }
}

fn mismatch(field: &str, expected: impl Into<String>, computed: impl Into<String>) -> Mismatch {
    Mismatch { field: field.to_string(), expected: expected.into(), computed: computed.into() }
}

/// Canonical rendering of a fixture value, or a description of why it
/// does not parse.
fn canonical(field: &str, raw: &str) -> Result<String, String> {
    let e = |err: CliError| err.to_string();
    match field {
        "n1" | "n2" | "a0" | "a1" => parse_integer(raw).map(|x| x.to_string()).map_err(e),
        "DL" | "delta" => parse_factored(raw).map(|x| factored(&x)).map_err(e),
        "case" => raw.parse::<CaseTag>().map(|t| t.label().to_string()).map_err(|err| err.to_string()),
        _ => parse_rational(raw).map(|x| rational(&x)).map_err(e),
    }
}

fn computed_values(an: &Analysis) -> [(&'static str, String); 8] {
    let inv = &an.invariants;
    let g = &an.generator;
    let [c, r, rp] = rho_prime_coords(&an.field, &g.alpha);
    [
        ("DL", factored(&inv.discriminant)),
        ("case", inv.tag.label().to_string()),
        ("delta", inv.delta_factorization.to_string()),
        ("a0", g.a0.to_string()),
        ("a1", g.a1.to_string()),
        ("alpha_c", c),
        ("alpha_rho", r),
        ("alpha_rhoprime", rp),
    ]
}

/// Recomputes the row, compares every field after canonical rendering, and
/// certifies the row's own α independently of the recomputed one.
pub fn verify_row(index: usize, row: &FixtureRow) -> RowOutcome {
    let mut out = RowOutcome { row: index, n1: row.n1.clone(), n2: row.n2.clone(), mismatches: Vec::new() };
    let mut parsed = std::collections::BTreeMap::new();
    for f in FIELDS {
        let raw = row.get(f).expect("known field");
        match canonical(f, raw) {
            Ok(v) => {
                parsed.insert(f, v);
            }
            Err(err) => out.mismatches.push(mismatch(f, raw.clone(), format!("unparsable: {err}"))),
        }
    }
    let (Some(n1), Some(n2)) = (parsed.get("n1"), parsed.get("n2")) else {
        return out;
    };
    let an = match analyze(parse_integer(n1).expect("canonical"), parse_integer(n2).expect("canonical")) {
        Ok(an) => an,
        Err(err) => {
            out.mismatches.push(mismatch("pipeline", "a certified analysis", err.to_string()));
            return out;
        }
    };
    if (an.invariants.n1.to_string(), an.invariants.n2.to_string()) != (n1.clone(), n2.clone()) {
        out.mismatches.push(mismatch(
            "n1/n2",
            format!("{n1}/{n2}"),
            format!("not normalized: {}/{}", an.invariants.n1, an.invariants.n2),
        ));
    }
    for (f, value) in computed_values(&an) {
        if let Some(expected) = parsed.get(f) {
            if *expected != value {
                out.mismatches.push(mismatch(f, row.get(f).expect("known field").clone(), value));
            }
        }
    }
    let coords = ["alpha_c", "alpha_rho", "alpha_rhoprime"].map(|f| parsed.get(f).map(|v| parse_rational(v).expect("canonical")));
    if let [Some(constant), Some(rho), Some(rho_prime)] = coords {
        let alpha = an.field.from_rho_prime(&RhoPrimeCoords { constant, rho, rho_prime });
        let cert = certify(&an.field, &an.invariants, &alpha, &an.basis);
        if let Some(check) = cert.first_failure() {
            out.mismatches.push(mismatch("fixture alpha", "certified generator", format!("fails {check}")));
        }
    }
    out
}

pub fn all_passed(outcomes: &[RowOutcome]) -> bool {
    outcomes.iter().all(RowOutcome::passed)
}
