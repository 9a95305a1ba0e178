use std::fmt::Write as _;

use super::{interior_label, kind_name, Report, ReportBody, RunSummary};
use crate::error::{Error, Result};
use crate::report::Format;
use crate::suite::builtin_catalog;

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => render_json(report),
        Format::Csv => render_csv(report),
        Format::Markdown => Ok(render_markdown(report)),
    }
}

fn render_json(report: &Report) -> Result<String> {
    let mut text =
        serde_json::to_string_pretty(report).map_err(|e| Error::Io(format!("serializing report: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn sci(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "–".to_owned())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(format!("writing csv: {e}"))
}

fn render_csv(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &report.body {
        ReportBody::Verify { cases } => {
            w.write_record([
                "id", "kind", "status", "residual", "tolerance", "A", "B", "alpha", "beta", "d_a", "d_b", "margin",
                "interior", "note",
            ])
            .map_err(csv_error)?;
            for c in cases {
                let p = &c.params;
                w.write_record([
                    c.id.clone(),
                    kind_name(&c.kind),
                    kind_name(&c.status),
                    num(c.residual),
                    num(c.tolerance),
                    p.a.to_string(),
                    p.b.to_string(),
                    p.alpha.to_string(),
                    p.beta.to_string(),
                    p.d_a.to_string(),
                    p.d_b.to_string(),
                    p.margin.to_string(),
                    interior_label(&p.interior),
                    c.note.clone().unwrap_or_default(),
                ])
                .map_err(csv_error)?;
            }
        }
        ReportBody::Sweep { rows } => {
            w.write_record([
                "r", "k_exact", "k_first_order", "deficit_SSdag", "deficit_SdagS", "sn_residual", "error",
            ])
            .map_err(csv_error)?;
            for r in rows {
                w.write_record([
                    r.r.to_string(),
                    r.k_exact.to_string(),
                    r.k_first_order.to_string(),
                    num(r.deficit_ss_dag),
                    num(r.deficit_s_dag_s),
                    num(r.sn_residual),
                    r.error.clone().unwrap_or_default(),
                ])
                .map_err(csv_error)?;
            }
        }
        ReportBody::Converge { table } => {
            w.write_record(["case", "d", "residual", "verdict", "error"]).map_err(csv_error)?;
            for row in &table.rows {
                let verdict = table.case(&row.case).map(|c| kind_name(&c.verdict)).unwrap_or_default();
                w.write_record([
                    row.case.clone(),
                    row.d.to_string(),
                    num(row.residual),
                    verdict,
                    row.error.clone().unwrap_or_default(),
                ])
                .map_err(csv_error)?;
            }
        }
        ReportBody::Classical { classical } => {
            w.write_record(["check", "value", "threshold", "status", "note"]).map_err(csv_error)?;
            for c in &classical.checks {
                w.write_record([
                    c.name.clone(),
                    num(c.value),
                    num(c.threshold),
                    kind_name(&c.status),
                    c.note.clone().unwrap_or_default(),
                ])
                .map_err(csv_error)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(format!("writing csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}

fn summary_block(out: &mut String, s: &RunSummary) {
    let c = &s.counts;
    let _ = writeln!(out, "# {} {}\n", s.tool, s.mode.name());
    let _ = writeln!(out, "- version: {}", s.version);
    let _ = writeln!(
        out,
        "- pass {}, fail {}, skip {}, report-only {} (total {})",
        c.pass,
        c.fail,
        c.skip,
        c.report_only,
        c.total()
    );
    for k in &s.max_residual {
        let _ = writeln!(out, "- max residual, {}: {:.3e}", k.kind, k.max_residual);
    }
    if let Some(t) = s.wall_time_seconds {
        let _ = writeln!(out, "- wall time: {t:.3} s");
    }
    out.push('\n');
}

fn deviation_ledger(out: &mut String) {
    out.push_str("## Deviation notes\n\n");
    for case in builtin_catalog() {
        if let Some(note) = case.deviation {
            let _ = writeln!(out, "- **{}** ({}): {}", case.id, case.covers.join(", "), note);
        }
    }
    out.push('\n');
}

fn render_markdown(report: &Report) -> String {
    let mut out = String::new();
    summary_block(&mut out, &report.summary);
    match &report.body {
        ReportBody::Verify { cases } => {
            out.push_str("## Cases\n\n");
            out.push_str("| id | kind | status | residual | tolerance | A | B | α | β | d | interior | note |\n");
            out.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|\n");
            for c in cases {
                let p = &c.params;
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {:.4} | {:.4} | {:.4} | {:.4} | {}×{} | {} | {} |",
                    c.id,
                    kind_name(&c.kind),
                    kind_name(&c.status),
                    sci(c.residual),
                    sci(c.tolerance),
                    p.a,
                    p.b,
                    p.alpha,
                    p.beta,
                    p.d_a,
                    p.d_b,
                    interior_label(&p.interior),
                    cell(c.note.as_deref().unwrap_or(""))
                );
            }
            out.push('\n');
            deviation_ledger(&mut out);
        }
        ReportBody::Sweep { rows } => {
            out.push_str("## Sweep\n\n");
            out.push_str("| r | k exact | k first order | ‖SS†−I‖ | ‖S†S−I‖ | ‖[S,N]−S‖ | error |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "| {} | {:.6} | {:.6} | {} | {} | {} | {} |",
                    r.r,
                    r.k_exact,
                    r.k_first_order,
                    sci(r.deficit_ss_dag),
                    sci(r.deficit_s_dag_s),
                    sci(r.sn_residual),
                    cell(r.error.as_deref().unwrap_or(""))
                );
            }
            out.push('\n');
        }
        ReportBody::Converge { table } => {
            out.push_str("## Convergence\n\n| case |");
            for d in &table.dims {
                let _ = write!(out, " d={d} |");
            }
            out.push_str(" verdict |\n|---|");
            for _ in &table.dims {
                out.push_str("---|");
            }
            out.push_str("---|\n");
            for c in &table.cases {
                let _ = write!(out, "| {} |", c.case);
                for r in &c.residuals {
                    let _ = write!(out, " {} |", sci(*r));
                }
                let _ = writeln!(out, " {} |", kind_name(&c.verdict));
            }
            out.push('\n');
            deviation_ledger(&mut out);
        }
        ReportBody::Classical { classical } => {
            let spec = &classical.spec;
            let _ = writeln!(
                out,
                "## Oscillator\n\n- window [{}, {}], step {}, {} samples",
                spec.t0, spec.t1, spec.step, classical.samples
            );
            if let Some(theta) = classical.theta_end {
                let _ = writeln!(out, "- θ at t1: {theta:.10}");
            }
            out.push_str("\n## Checks\n\n| check | value | threshold | status | note |\n|---|---|---|---|---|\n");
            for c in &classical.checks {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    c.name,
                    sci(c.value),
                    sci(c.threshold),
                    kind_name(&c.status),
                    cell(c.note.as_deref().unwrap_or(""))
                );
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{run, Mode, RunConfig};
    use crate::suite::NOTE_LADDER;

    #[test]
    fn markdown_carries_the_deviation_notes() {
        let cfg = RunConfig {
            da: 5,
            db: 5,
            cases: vec!["GG7".into()],
            ..Default::default()
        };
        let md = render(&run(Mode::Verify, cfg).unwrap(), Format::Markdown).unwrap();
        assert!(md.contains(NOTE_LADDER));
        assert!(md.contains("| GG7 | exact-full-space | pass |"));
    }

    #[test]
    fn csv_has_header_and_one_row_per_case() {
        let cfg = RunConfig {
            da: 5,
            db: 5,
            cases: vec!["GG7".into(), "GG4".into()],
            ..Default::default()
        };
        let text = render(&run(Mode::Verify, cfg).unwrap(), Format::Csv).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(reader.headers().unwrap().get(0), Some("id"));
        let ids: Vec<String> = reader.records().map(|r| r.unwrap()[0].to_owned()).collect();
        assert_eq!(ids, vec!["GG4", "GG7"]);
    }
}
