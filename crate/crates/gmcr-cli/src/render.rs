//! Text rendering of stability reports and comparison grids: an aligned
//! table mirroring the published layout (one row per concept, one column
//! per state), or the same grid as CSV. Output is deterministic byte for
//! byte.

use gmcr_core::stability::{ComparisonReport, Mark, RowLabel, StabilityReport};

/// Output style for grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
}

/// Mark used for an equilibrium cell in a single-report grid.
const EQUILIBRIUM_MARK: &str = "x";

fn grid(format: OutputFormat, header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Table => {
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for row in &rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let mut out = String::new();
            for row in std::iter::once(&header).chain(rows.iter()) {
                let mut line = String::new();
                for (i, cell) in row.iter().enumerate() {
                    if i > 0 {
                        line.push_str("  ");
                    }
                    line.push_str(&format!("{:<width$}", cell, width = widths[i]));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out
        }
    }
}

/// Renders one report: rows Nash, GMR, SMR, SEQ, CNash, CGMR, CSMR,
/// CSEQ, Pareto; one column per state; `x` marks an equilibrium (or a
/// Pareto-optimal state on the Pareto row).
pub fn render_report(report: &StabilityReport, format: OutputFormat) -> String {
    let mut header = vec!["concept".to_string()];
    header.extend(report.states().iter().map(|s| s.to_string()));
    let rows = RowLabel::ALL
        .iter()
        .map(|row| {
            let mut cells = vec![row.name().to_string()];
            cells.extend(report.states().iter().map(|&s| {
                let member = match row {
                    RowLabel::Concept(c) => report.is_equilibrium(*c, s),
                    RowLabel::Pareto => report.pareto().contains(&s),
                };
                if member { EQUILIBRIUM_MARK.to_string() } else { String::new() }
            }));
            cells
        })
        .collect();
    grid(format, header, rows)
}

fn mark_symbol(mark: Mark) -> &'static str {
    match mark {
        Mark::Both => "=",
        Mark::OnlyA => "A",
        Mark::OnlyB => "B",
        Mark::Neither => "",
    }
}

/// Renders a comparison grid: `=` where both reports agree on an
/// equilibrium, `A`/`B` where only one side has it, blank where neither
/// does. Columns named `A:sK` are states of report A outside the mapping.
pub fn render_comparison(cmp: &ComparisonReport, format: OutputFormat) -> String {
    let mut header = vec!["concept".to_string()];
    header.extend(cmp.columns().iter().map(|c| c.to_string()));
    let rows = cmp
        .rows()
        .map(|(label, marks)| {
            let mut cells = vec![label.name().to_string()];
            cells.extend(marks.iter().map(|&m| mark_symbol(m).to_string()));
            cells
        })
        .collect();
    grid(format, header, rows)
}
