//! Human-readable forms of command results.

use std::fmt::Write;

use autplane::derivations::Side;
use autplane::lattice::GeneratorSpec;
use autplane::transitivity::{
    AdSource, CertStep, CertVerdict, ClosureCertificate, Evidence, Obstruction, SpecWitness, Verdict, WitnessMachinery,
};

fn machinery(m: &WitnessMachinery) -> String {
    let mut out = format!("route: {:?}\nH-degree t = {}\n", m.route, m.h_degree).to_lowercase();
    if let Some(n0) = m.n0 {
        let _ = writeln!(out, "n0 = {n0}");
    }
    let _ = writeln!(
        out,
        "every K_n with n >= {} is certified; window [{}, {}) plus shifts by {}",
        m.threshold,
        m.threshold,
        m.threshold + m.shift,
        m.shift
    );
    for c in &m.certificates {
        let _ = writeln!(out, "  {} ({} steps)", c.conclusion, c.steps.len());
    }
    out
}

pub fn obstruction(o: &Obstruction) -> String {
    match o {
        Obstruction::Congruence { m, checks } => {
            let mut out = format!("span index m = {m}\n");
            for c in checks {
                let status = if c.holds() { "ok" } else { "FAILS" };
                let _ = writeln!(
                    out,
                    "  {}: {} = {} mod {}: {status}",
                    c.description, c.value, c.expected, c.modulus
                );
            }
            out
        }
        Obstruction::RankDeficient { reason } => format!("roots do not span a full-rank lattice: {reason:?}\n"),
    }
}

pub fn verdict(spec: &GeneratorSpec, v: &Verdict) -> String {
    let mut out = format!("{spec}: {:?}\n", v.answer);
    match &v.evidence {
        Evidence::WitnessMachinery(m) => out.push_str(&machinery(m)),
        Evidence::Obstruction(o) => out.push_str(&obstruction(o)),
    }
    out
}

fn step(s: &CertStep) -> String {
    let src = |s: &Option<usize>| s.map(|i| format!(" of #{i}")).unwrap_or_default();
    match s {
        CertStep::UseGenerator { root } => format!("generator {root}"),
        CertStep::AdConjugate { by, t, src: from } => {
            let by = match by {
                AdSource::Root(e) => format!("root {e}"),
                AdSource::Step(i) => format!("#{i}"),
            };
            format!("exp({t} ad {by}){}", src(from))
        }
        CertStep::PrincipalPart { dir, side, src: from } => {
            let side = match side {
                Side::Max => "max",
                Side::Min => "min",
            };
            format!("principal part along {} ({side}){}", dir.rho(), src(from))
        }
        CertStep::ExtractSummand { deg, src: from } => format!("summand of degree {deg}{}", src(from)),
        CertStep::LinearCombine { terms } => {
            let parts: Vec<String> = terms.iter().map(|t| format!("{} * #{}", t.1, t.0)).collect();
            format!("combine {}", parts.join(" + "))
        }
    }
}

pub fn certificate(c: &ClosureCertificate) -> String {
    let mut out = format!("family {}\n", c.spec);
    if let Some(d) = &c.decomposition {
        let parts: Vec<String> = d.nu.iter().chain(&d.mu).map(ToString::to_string).collect();
        let _ = writeln!(out, "{} = {}", d.target, parts.join(" + "));
    }
    for (i, s) in c.steps.iter().enumerate() {
        let _ = writeln!(out, "#{i}: {}", step(s));
    }
    let _ = writeln!(out, "conclusion: {}", c.conclusion);
    out
}

pub fn cert_verdict(c: &ClosureCertificate, v: &CertVerdict) -> String {
    match v {
        CertVerdict::Valid => format!("valid: {}", c.conclusion),
        CertVerdict::Invalid { step, reason } => format!("invalid at step {step}: {reason}"),
    }
}

pub fn witness(w: &SpecWitness) -> String {
    let mut out = format!("word: {}\nt = {}, s = {}\n", w.word, w.t, w.s);
    for (n, c) in &w.certificates {
        let _ = writeln!(out, "K_{n} certified in {} steps", c.steps.len());
    }
    out
}
