//! Output formats. Every rendering is a pure function of the report.

use clap::ValueEnum;
use serde::Serialize;

use crate::report::RunReport;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Serialize)]
struct Envelope<'a> {
    payload: &'a RunReport,
    sha256: String,
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => csv(report),
        Format::Table => table(report),
    }
}

fn json(report: &RunReport) -> String {
    let env = Envelope {
        payload: report,
        sha256: report.checksum(),
    };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

fn csv(report: &RunReport) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    let mut row = |fields: &[String]| w.write_record(fields).expect("in-memory write");
    let s = |x: &dyn ToString| x.to_string();
    if let Some(rows) = &report.sweep {
        row(&["p", "q", "exists", "rank", "verify", "note"].map(String::from));
        for r in rows {
            row(&[
                s(&r.p),
                s(&r.q),
                s(&r.exists),
                r.rank.map(|x| x.to_string()).unwrap_or_default(),
                s(&r.verify.as_str()),
                r.note.clone().unwrap_or_default(),
            ]);
        }
    } else if let Some(c) = &report.census {
        row(&["label", "dim", "count"].map(String::from));
        for e in &c.entries {
            row(&[e.label.clone(), s(&e.dim), s(&e.count)]);
        }
    } else if let Some(d) = &report.double_rank {
        row(&["order", "abelian", "class_count", "double_rank"].map(String::from));
        row(&[
            s(&d.order),
            s(&d.abelian),
            s(&d.class_count),
            s(&d.double_rank),
        ]);
    }
    if report.sweep.is_none() && report.command == "verify" {
        row(&["check", "status", "note"].map(String::from));
        for c in &report.checks {
            row(&[
                c.name.clone(),
                s(&c.status.as_str()),
                c.note.clone().unwrap_or_default(),
            ]);
        }
    }
    let mut out = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
    if let Some(c) = &report.census {
        out.push_str(&format!(
            "# rank {}\n# sum_of_squares {}\n",
            c.rank, c.sum_of_squares
        ));
    }
    out.push_str(&format!("# sha256 {}\n", report.checksum()));
    out
}

fn table(report: &RunReport) -> String {
    let mut out = String::new();
    let mut line = |l: String| {
        out.push_str(&l);
        out.push('\n');
    };
    match &report.parameters {
        Some(p) => line(format!(
            "{}  p = {}  q = {}  F_q² = F_q[x]/({})",
            report.command, p.p, p.q, p.defining_polynomial
        )),
        None => line(report.command.clone()),
    }
    if let Some(c) = &report.census {
        line(String::new());
        line(format!("{:<10} {:>6} {:>6}", "family", "dim", "count"));
        for e in &c.entries {
            line(format!("{:<10} {:>6} {:>6}", e.label, e.dim, e.count));
        }
        line(format!("rank {}", c.rank));
        line(format!(
            "Σd² = {} (global dimension {})",
            c.sum_of_squares, c.global_dim
        ));
    }
    if let Some(g) = &report.group_orders {
        line(String::new());
        line(format!(
            "|O(anisotropic)| = {}  |O(hyperbolic)| = {}  |F_q² ⋊ Z/p| = {}",
            g.anisotropic, g.hyperbolic, g.semidirect
        ));
    }
    if let Some(a) = &report.fusion_axioms {
        let dims: Vec<String> = a.fp_dims.iter().map(u64::to_string).collect();
        line(format!(
            "extension ring: {} simples, {} nonzero N_ij^k, FP dims {{{}}}, dimension {}",
            a.basis_size,
            a.nonzero_constants,
            dims.join(", "),
            a.global_dim
        ));
    }
    if let Some(v) = &report.gt_verdict {
        line(format!(
            "criterion: μ₁ = {}, μ₂ = {}, μ₁/μ₂ = {}, {}",
            v.mu1,
            v.mu2,
            v.ratio,
            if v.group_theoretical {
                "group-theoretical"
            } else {
                "not group-theoretical"
            }
        ));
    }
    if let Some(d) = &report.double_rank {
        line(format!(
            "|G| = {}  classes = {}  abelian = {}  rank Z(Vec_G) = {}",
            d.order, d.class_count, d.abelian, d.double_rank
        ));
    }
    if let Some(rows) = &report.sweep {
        line(format!(
            "{:>4} {:>4} {:>7} {:>6}  {}",
            "p", "q", "exists", "rank", "verify"
        ));
        for r in rows {
            let rank = r.rank.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let note = r
                .note
                .as_deref()
                .map(|n| format!(" ({n})"))
                .unwrap_or_default();
            line(format!(
                "{:>4} {:>4} {:>7} {:>6}  {}{}",
                r.p,
                r.q,
                r.exists,
                rank,
                r.verify.as_str(),
                note
            ));
        }
    }
    if !report.checks.is_empty() {
        line(String::new());
        for c in &report.checks {
            let note = c
                .note
                .as_deref()
                .map(|n| format!("  [{n}]"))
                .unwrap_or_default();
            line(format!("{:<8} {}{}", c.status.as_str(), c.name, note));
        }
    }
    line(String::new());
    line(format!(
        "{}  sha256 {}",
        if report.passed { "ok" } else { "FAILED" },
        report.checksum()
    ));
    out
}
