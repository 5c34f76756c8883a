//! Report assembly for the `rigidcy` command-line tool.

pub mod approx;
pub mod commands;
pub mod envelope;

pub use commands::Report;
pub use envelope::{Outcome, ReportEnvelope, Status, VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Renders a report. With `approx`, decimals are attached to exact values and
/// marked as display-only.
pub fn emit(report: &Report, format: Format, approx: bool) -> String {
    let mut env = report.envelope.clone();
    let decimals = if approx { approx::annotate(&mut env.payload) } else { Vec::new() };
    match format {
        Format::Json => env.to_json(),
        Format::Text => {
            let mut out = format!("rigidcy {} :: {}\n", env.version, env.command);
            for line in &report.text {
                out.push_str(line);
                out.push('\n');
            }
            if !decimals.is_empty() {
                out.push_str("approximate values (display only, not authoritative):\n");
                for (exact, dec) in &decimals {
                    out.push_str(&format!("  {exact} ~ {dec}\n"));
                }
            }
            out.push_str("checks:\n");
            for s in &env.statuses {
                let tag = match s.outcome {
                    Outcome::Pass => "PASS",
                    Outcome::Fail => "FAIL",
                    Outcome::Inconclusive => "INCONCLUSIVE",
                };
                out.push_str(&format!("  [{tag}] {}: {}\n", s.check, s.detail));
            }
            out
        }
    }
}
