//! Certificates as JSON and as plain text.

use covercert_core::distortion::{Certificate, TermRecord};
use serde::Serialize;

use crate::rational::fmt_rational;

#[derive(Serialize)]
struct JsonTerm {
    p: u64,
    nu: u32,
    delta: String,
    m1: String,
    m2: String,
    term: String,
    branch: &'static str,
}

#[derive(Serialize)]
struct JsonCertificate {
    eta: String,
    verdict: String,
    terms: Vec<JsonTerm>,
    witness: Option<u64>,
}

fn json_term(t: &TermRecord) -> JsonTerm {
    JsonTerm {
        p: t.prime,
        nu: t.exponent,
        delta: fmt_rational(&t.delta),
        m1: fmt_rational(&t.m1),
        m2: fmt_rational(&t.m2),
        term: fmt_rational(&t.term),
        branch: t.branch.as_str(),
    }
}

pub fn certificate_json(c: &Certificate) -> String {
    let doc = JsonCertificate {
        eta: fmt_rational(&c.eta),
        verdict: c.verdict.to_string(),
        terms: c.terms.iter().map(json_term).collect(),
        witness: c.witness,
    };
    serde_json::to_string_pretty(&doc).expect("certificates always serialize")
}

pub fn certificate_text(c: &Certificate) -> String {
    let mut out = String::new();
    for t in &c.terms {
        out.push_str(&format!(
            "p={} nu={} delta={} m1={} m2={} term={} ({})\n",
            t.prime,
            t.exponent,
            fmt_rational(&t.delta),
            fmt_rational(&t.m1),
            fmt_rational(&t.m2),
            fmt_rational(&t.term),
            t.branch.as_str()
        ));
    }
    out.push_str(&format!("eta: {}\nverdict: {}\n", fmt_rational(&c.eta), c.verdict));
    if let Some(w) = c.witness {
        out.push_str(&format!("witness: {w}\n"));
    }
    out
}
