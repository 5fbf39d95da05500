//! Output formatting: CSV is the canonical acceptance format, JSON mirrors
//! it with a schema version field. All floats print with 17 significant
//! digits so values round-trip exactly.

use equidist_core::discrepancy::{DiscrepancyReport, GrowthRow, ZeroStats};
use equidist_core::mahler::MeasureReport;
use serde_json::json;

pub const SCHEMA_VERSION: u32 = 1;

pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn write_out(path: Option<&std::path::Path>, body: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn pass_label(rep: &DiscrepancyReport) -> &'static str {
    match rep.pass {
        Some(true) => "true",
        Some(false) => "false",
        None => "skip",
    }
}

pub fn reports_csv(rows: &[(String, DiscrepancyReport)]) -> String {
    let mut out = String::from("theorem,member,n,lhs,lhs_unc,rhs,pass\n");
    for (label, rep) in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            rep.theorem.label(),
            label,
            rep.params.n,
            fmt_f64(rep.lhs),
            fmt_f64(rep.lhs_uncertainty),
            fmt_f64(rep.rhs),
            pass_label(rep)
        ));
    }
    out
}

pub fn reports_json(rows: &[(String, DiscrepancyReport)]) -> String {
    let items: Vec<_> = rows
        .iter()
        .map(|(label, rep)| {
            json!({
                "theorem": rep.theorem.label(),
                "member": label,
                "n": rep.params.n,
                "lhs": rep.lhs,
                "lhs_unc": rep.lhs_uncertainty,
                "rhs": rep.rhs,
                "pass": pass_label(rep),
                "m_value": rep.params.m_value,
                "domain": rep.params.domain,
            })
        })
        .collect();
    let doc = json!({"schema_version": SCHEMA_VERSION, "rows": items});
    format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub fn measure_csv(rows: &[(String, MeasureReport)]) -> String {
    let mut out = String::from("member,mahler,generalized,tilde,height,sup_norm,gap\n");
    for (label, rep) in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            label,
            fmt_f64(rep.mahler),
            fmt_f64(rep.generalized),
            fmt_f64(rep.tilde),
            fmt_f64(rep.height),
            fmt_f64(rep.sup_norm),
            fmt_f64(rep.sup_gap)
        ));
    }
    out
}

pub fn measure_json(rep: &MeasureReport, diag: &equidist_core::mahler::GrowthDiagnostics) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "mahler": rep.mahler,
        "generalized": rep.generalized,
        "tilde": rep.tilde,
        "height": rep.height,
        "sup_norm": rep.sup_norm,
        "gap": rep.sup_gap,
        "domain": rep.domain.describe(),
        "notes": rep.method_notes,
        "diagnostics": {
            "lead_root": diag.lead_root,
            "mahler_root": diag.mahler_root,
            "tail_product_root": diag.tail_product_root,
            "tail_radius": diag.tail_radius,
        },
    });
    format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub fn measures_json(rows: &[(String, MeasureReport)]) -> String {
    let items: Vec<_> = rows
        .iter()
        .map(|(label, rep)| {
            json!({
                "member": label,
                "mahler": rep.mahler,
                "generalized": rep.generalized,
                "tilde": rep.tilde,
                "height": rep.height,
                "sup_norm": rep.sup_norm,
                "gap": rep.sup_gap,
            })
        })
        .collect();
    let doc = json!({"schema_version": SCHEMA_VERSION, "rows": items});
    format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub fn stats_csv(rows: &[(String, ZeroStats)]) -> String {
    let mut out = String::from(
        "member,n,mean_re,mean_im,mean_square_re,mean_square_im,sector_counts\n",
    );
    for (label, st) in rows {
        let sectors: Vec<String> = st.sector_counts.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            label,
            st.n,
            fmt_f64(st.mean.re),
            fmt_f64(st.mean.im),
            fmt_f64(st.mean_square.re),
            fmt_f64(st.mean_square.im),
            sectors.join(";")
        ));
    }
    out
}

pub fn stats_json(rows: &[(String, ZeroStats)]) -> String {
    let items: Vec<_> = rows
        .iter()
        .map(|(label, st)| {
            json!({
                "member": label,
                "n": st.n,
                "mean": [st.mean.re, st.mean.im],
                "mean_square": [st.mean_square.re, st.mean_square.im],
                "moments": st.moments.iter().map(|m| vec![m.re, m.im]).collect::<Vec<_>>(),
                "sector_counts": st.sector_counts,
            })
        })
        .collect();
    let doc = json!({"schema_version": SCHEMA_VERSION, "rows": items});
    format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub fn growth_csv(rows: &[GrowthRow]) -> String {
    let mut out = String::from("parameter,n,log_sup,ratio\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.parameter,
            row.n,
            fmt_f64(row.log_sup),
            fmt_f64(row.ratio)
        ));
    }
    out
}

pub fn growth_json(rows: &[GrowthRow]) -> String {
    let items: Vec<_> = rows
        .iter()
        .map(|row| {
            json!({
                "parameter": row.parameter,
                "n": row.n,
                "log_sup": row.log_sup,
                "ratio": row.ratio,
            })
        })
        .collect();
    let doc = json!({"schema_version": SCHEMA_VERSION, "rows": items});
    format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
}
