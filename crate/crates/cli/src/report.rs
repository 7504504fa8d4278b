//! Per-parameter reports and table rows. Integers and rationals are carried
//! as strings so that JSON and CSV stay lossless.

use std::fmt::Write as _;
use std::time::Instant;

use cyclic_cubic_core::classify::associated_order_description;
use cyclic_cubic_core::galois_module::{corollary_form, Certificate, Corollary};
use cyclic_cubic_core::{analyze, Analysis, CubicField, Error, FieldElement};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::render::{factored, rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: Input,
    pub invariants: Invariants,
    pub integral_basis: BasisReport,
    pub generator: GeneratorReport,
    pub certificate: CertificateReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub n1: String,
    pub n2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub delta: String,
    pub delta_factored: String,
    pub d: String,
    pub e: String,
    pub c: String,
    pub m: String,
    pub case: String,
    pub conductor: String,
    pub discriminant: String,
    pub discriminant_factored: String,
    pub associated_order: String,
    pub d_set: Vec<String>,
}

/// φ and ψ over {1, ρ, ρ²}; r is reduced mod 3u.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub u: String,
    pub r: String,
    pub phi: [String; 3],
    pub psi: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub a0: String,
    pub a1: String,
    pub epsilon: Option<i8>,
    pub structure: String,
    /// Over {1, ρ, ρ²}.
    pub alpha: [String; 3],
    /// Over {1, ρ, ρ′}.
    pub alpha_rho_prime: [String; 3],
    pub corollary: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub integrality: bool,
    pub trace_zero: Option<bool>,
    pub discriminant: bool,
    pub index: bool,
    pub idempotents: Option<bool>,
    pub elapsed_us: u64,
}

fn coords(x: &FieldElement) -> [String; 3] {
    x.c.each_ref().map(rational)
}

pub fn rho_prime_coords(field: &CubicField, x: &FieldElement) -> [String; 3] {
    let y = field.to_rho_prime(x);
    [rational(&y.constant), rational(&y.rho), rational(&y.rho_prime)]
}

fn corollary_label(c: Corollary) -> &'static str {
    match c {
        Corollary::SquareFree => "delta-squarefree",
        Corollary::TameThreeCubed => "delta-27d-tame",
        Corollary::WildThreeCubed => "delta-27d-wild",
        Corollary::WildThreeSquared => "delta-9d-wild",
    }
}

impl Report {
    pub fn compute(n1: &BigInt, n2: &BigInt) -> Result<Report, Error> {
        let start = Instant::now();
        let an = analyze(n1.clone(), n2.clone())?;
        let elapsed_us = start.elapsed().as_micros().try_into().unwrap_or(u64::MAX);
        Ok(Report::from_analysis(&an, elapsed_us))
    }

    pub fn from_analysis(an: &Analysis, elapsed_us: u64) -> Report {
        let inv = &an.invariants;
        let order = associated_order_description(inv);
        let g = &an.generator;
        let cert: &Certificate = &g.certificate;
        Report {
            input: Input { n1: inv.n1.to_string(), n2: inv.n2.to_string() },
            invariants: Invariants {
                delta: inv.delta.to_string(),
                delta_factored: inv.delta_factorization.to_string(),
                d: inv.dec.d.to_string(),
                e: inv.dec.e.to_string(),
                c: inv.dec.c.to_string(),
                m: inv.m.to_string(),
                case: inv.tag.label().to_string(),
                conductor: inv.conductor.to_string(),
                discriminant: inv.discriminant.to_string(),
                discriminant_factored: factored(&inv.discriminant),
                associated_order: order.order.to_string(),
                d_set: order.d_set.iter().map(ToString::to_string).collect(),
            },
            integral_basis: BasisReport {
                u: an.basis.u.to_string(),
                r: an.basis.r.to_string(),
                phi: coords(&an.basis.phi),
                psi: coords(&an.basis.psi),
            },
            generator: GeneratorReport {
                a0: g.a0.to_string(),
                a1: g.a1.to_string(),
                epsilon: g.epsilon,
                structure: g.structure.label().to_string(),
                alpha: coords(&g.alpha),
                alpha_rho_prime: rho_prime_coords(&an.field, &g.alpha),
                corollary: corollary_form(&an.field, inv).map(|(c, _)| corollary_label(c).to_string()),
            },
            certificate: CertificateReport {
                integrality: cert.integrality,
                trace_zero: cert.trace_zero,
                discriminant: cert.discriminant,
                index: cert.index,
                idempotents: cert.idempotents,
                elapsed_us,
            },
        }
    }

    /// Flat (column, value) pairs for CSV output.
    pub fn columns(&self) -> Vec<(String, String)> {
        let opt = |b: Option<bool>| b.map(|v| v.to_string()).unwrap_or_default();
        let mut out: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        let (i, b, g, c) = (&self.invariants, &self.integral_basis, &self.generator, &self.certificate);
        push("n1", self.input.n1.clone());
        push("n2", self.input.n2.clone());
        push("delta", i.delta.clone());
        push("delta_factored", i.delta_factored.clone());
        push("d", i.d.clone());
        push("e", i.e.clone());
        push("c", i.c.clone());
        push("m", i.m.clone());
        push("case", i.case.clone());
        push("conductor", i.conductor.clone());
        push("discriminant", i.discriminant.clone());
        push("discriminant_factored", i.discriminant_factored.clone());
        push("associated_order", i.associated_order.clone());
        push("d_set", i.d_set.join(" "));
        push("u", b.u.clone());
        push("r", b.r.clone());
        for (name, v) in [("phi", &b.phi), ("psi", &b.psi), ("alpha", &g.alpha)] {
            for (k, x) in v.iter().enumerate() {
                push(&format!("{name}_{k}"), x.clone());
            }
        }
        push("alpha_c", g.alpha_rho_prime[0].clone());
        push("alpha_rho", g.alpha_rho_prime[1].clone());
        push("alpha_rhoprime", g.alpha_rho_prime[2].clone());
        push("a0", g.a0.clone());
        push("a1", g.a1.clone());
        push("epsilon", g.epsilon.map(|e| e.to_string()).unwrap_or_default());
        push("structure", g.structure.clone());
        push("corollary", g.corollary.clone().unwrap_or_default());
        push("integrality", c.integrality.to_string());
        push("trace_zero", opt(c.trace_zero));
        push("discriminant_check", c.discriminant.to_string());
        push("index", c.index.to_string());
        push("idempotents", opt(c.idempotents));
        push("elapsed_us", c.elapsed_us.to_string());
        out
    }

    pub fn to_text(&self) -> String {
        let (i, b, g, c) = (&self.invariants, &self.integral_basis, &self.generator, &self.certificate);
        let mut s = String::new();
        let opt = |x: Option<bool>| x.map_or("n/a".to_string(), |v| v.to_string());
        let _ = writeln!(s, "n = {}/{}", self.input.n1, self.input.n2);
        let _ = writeln!(s, "delta          {} = {}", i.delta, i.delta_factored);
        let _ = writeln!(s, "(d, e, c)      ({}, {}, {})", i.d, i.e, i.c);
        let _ = writeln!(s, "m              {}", i.m);
        let _ = writeln!(s, "case           {}", i.case);
        let _ = writeln!(s, "conductor      {}", i.conductor);
        let _ = writeln!(s, "discriminant   {} = {}", i.discriminant, i.discriminant_factored);
        let _ = writeln!(s, "order          {} over D = {{{}}}", i.associated_order, i.d_set.join(", "));
        let _ = writeln!(s, "u, r           {}, {}", b.u, b.r);
        let _ = writeln!(s, "phi            {}", element_text(&b.phi, ["", "ρ", "ρ^2"]));
        let _ = writeln!(s, "psi            {}", element_text(&b.psi, ["", "ρ", "ρ^2"]));
        let _ = writeln!(s, "(a0, a1)       ({}, {})", g.a0, g.a1);
        if let Some(e) = g.epsilon {
            let _ = writeln!(s, "epsilon        {e}");
        }
        let _ = writeln!(s, "alpha          {}", element_text(&g.alpha_rho_prime, ["", "ρ", "ρ'"]));
        let _ = writeln!(s, "alpha (power)  {}", element_text(&g.alpha, ["", "ρ", "ρ^2"]));
        let _ = writeln!(s, "structure      {}", g.structure);
        if let Some(k) = &g.corollary {
            let _ = writeln!(s, "closed form    {k}");
        }
        let _ = writeln!(
            s,
            "certificate    integrality={} trace_zero={} discriminant={} index={} idempotents={}",
            c.integrality,
            opt(c.trace_zero),
            c.discriminant,
            c.index,
            opt(c.idempotents)
        );
        let _ = writeln!(s, "elapsed_us     {}", c.elapsed_us);
        s
    }
}

/// `(55/21)ρ + (11/21)ρ' - 4/7` style rendering.
pub fn element_text(coords: &[String; 3], names: [&str; 3]) -> String {
    let mut out = String::new();
    for (x, name) in [(&coords[1], names[1]), (&coords[2], names[2]), (&coords[0], names[0])] {
        if x == "0" {
            continue;
        }
        let (neg, mag) = match x.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, x.as_str()),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (name.is_empty(), mag) {
            (true, m) => out.push_str(m),
            (false, "1") => out.push_str(name),
            (false, m) if m.contains('/') => {
                let _ = write!(out, "({m}){name}");
            }
            (false, m) => {
                let _ = write!(out, "{m}{name}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One line of `table` output, columns mirroring the printed tables plus
/// certificate flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
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
    pub structure: String,
    pub integrality: Option<bool>,
    pub trace_zero: Option<bool>,
    pub discriminant: Option<bool>,
    pub index: Option<bool>,
    pub idempotents: Option<bool>,
    pub notice: String,
}

impl TableRow {
    pub fn from_analysis(an: &Analysis) -> TableRow {
        let inv = &an.invariants;
        let g = &an.generator;
        let [c, r, rp] = rho_prime_coords(&an.field, &g.alpha);
        TableRow {
            n1: inv.n1.to_string(),
            n2: inv.n2.to_string(),
            dl: factored(&inv.discriminant),
            case: inv.tag.label().to_string(),
            delta: inv.delta_factorization.to_string(),
            a0: g.a0.to_string(),
            a1: g.a1.to_string(),
            alpha_c: c,
            alpha_rho: r,
            alpha_rhoprime: rp,
            structure: g.structure.label().to_string(),
            integrality: Some(g.certificate.integrality),
            trace_zero: g.certificate.trace_zero,
            discriminant: Some(g.certificate.discriminant),
            index: Some(g.certificate.index),
            idempotents: g.certificate.idempotents,
            notice: String::new(),
        }
    }

    pub fn skipped(n1: &BigInt, n2: &BigInt, notice: String) -> TableRow {
        TableRow {
            n1: n1.to_string(),
            n2: n2.to_string(),
            dl: String::new(),
            case: String::new(),
            delta: String::new(),
            a0: String::new(),
            a1: String::new(),
            alpha_c: String::new(),
            alpha_rho: String::new(),
            alpha_rhoprime: String::new(),
            structure: String::new(),
            integrality: None,
            trace_zero: None,
            discriminant: None,
            index: None,
            idempotents: None,
            notice,
        }
    }

    pub fn alpha_text(&self) -> String {
        element_text(&[self.alpha_c.clone(), self.alpha_rho.clone(), self.alpha_rhoprime.clone()], ["", "ρ", "ρ'"])
    }
}
