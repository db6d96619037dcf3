use std::io::Write;

use serde::Serialize;
use wernerlike_core::measures::gwl_entropy;
use wernerlike_core::oracle::bell_threshold;
use wernerlike_core::{
    discord_analytic, discord_numeric, eof_from_concurrence, gwl, gwl_concurrence,
    intersection_point, p_critical, reduced_entropy, CorrelationReport, DiscordDirection,
    MixingParameter, NamedState, OptimizerConfig, PureState, StateSpec,
};

use crate::format::{num, opt_num, round12};
use crate::{CliError, Format};

pub fn cmd_report(
    psi: &PureState,
    p: f64,
    oracle: Option<&OptimizerConfig>,
) -> Result<CorrelationReport, CliError> {
    Ok(CorrelationReport::evaluate(psi, p, oracle)?)
}

fn rounded(r: &CorrelationReport) -> CorrelationReport {
    CorrelationReport {
        p: round12(r.p),
        entropy_total: round12(r.entropy_total),
        entropy_marginal: round12(r.entropy_marginal),
        concurrence_pure: round12(r.concurrence_pure),
        concurrence_gwl: round12(r.concurrence_gwl),
        eof: round12(r.eof),
        discord_analytic: round12(r.discord_analytic),
        discord_numeric: r.discord_numeric.map(round12),
        p_critical: round12(r.p_critical),
    }
}

fn report_fields(r: &CorrelationReport) -> Vec<(&'static str, f64)> {
    let mut fields = vec![
        ("p", r.p),
        ("entropy_total", r.entropy_total),
        ("entropy_marginal", r.entropy_marginal),
        ("concurrence_pure", r.concurrence_pure),
        ("concurrence_gwl", r.concurrence_gwl),
        ("eof", r.eof),
        ("discord_analytic", r.discord_analytic),
    ];
    if let Some(d) = r.discord_numeric {
        fields.push(("discord_numeric", d));
    }
    fields.push(("p_critical", r.p_critical));
    fields
}

pub fn write_report(
    out: &mut dyn Write,
    report: &CorrelationReport,
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&rounded(report))
                .map_err(|e| CliError::Failure(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            let fields = report_fields(report);
            let header: Vec<&str> = fields.iter().map(|f| f.0).collect();
            let values: Vec<String> = fields.iter().map(|f| num(f.1)).collect();
            writeln!(out, "{}", header.join(","))?;
            writeln!(out, "{}", values.join(","))?;
        }
        Format::Text => {
            for (k, v) in report_fields(report) {
                writeln!(out, "{k:<18} {}", num(v))?;
            }
        }
    }
    Ok(())
}

/// A sweep of the mixing parameter over `steps` evenly spaced points.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub state: StateSpec,
    pub normalize: bool,
    pub p_min: f64,
    pub p_max: f64,
    pub steps: usize,
    pub with_oracle: bool,
    pub config: OptimizerConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        MixingParameter::gwl(self.p_min)?;
        MixingParameter::gwl(self.p_max)?;
        if self.p_min > self.p_max {
            return Err(CliError::Usage(format!(
                "--p-min {} exceeds --p-max {}",
                self.p_min, self.p_max
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Usage(format!(
                "--steps must be at least 2, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.p_max
                } else {
                    self.p_min + (self.p_max - self.p_min) * i as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub eof: f64,
    pub qd_analytic: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qd_numeric: Option<f64>,
    pub s_ab: f64,
    pub s_a: f64,
}

pub fn cmd_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    let psi = spec.state.resolve(spec.normalize)?;
    spec.points()
        .into_iter()
        .map(|p| {
            let rho = gwl(&psi, p)?;
            let qd_numeric = if spec.with_oracle {
                Some(discord_numeric(
                    &rho,
                    DiscordDirection::MeasureA,
                    &spec.config,
                )?)
            } else {
                None
            };
            Ok(SweepRow {
                p,
                eof: eof_from_concurrence(gwl_concurrence(&psi, p)?),
                qd_analytic: discord_analytic(&psi, p)?,
                qd_numeric,
                s_ab: gwl_entropy(p)?,
                s_a: reduced_entropy(&psi, p)?,
            })
        })
        .collect()
}

fn write_table(
    out: &mut dyn Write,
    header: &[&str],
    rows: &[Vec<String>],
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in rows {
                writeln!(out, "{}", row.join(","))?;
            }
        }
        _ => {
            let widths: Vec<usize> = (0..header.len())
                .map(|c| {
                    rows.iter()
                        .map(|r| r[c].len())
                        .chain([header[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for row in rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn write_sweep(
    out: &mut dyn Write,
    rows: &[SweepRow],
    with_oracle: bool,
    format: Format,
) -> Result<(), CliError> {
    if format == Format::Json {
        let rounded: Vec<SweepRow> = rows
            .iter()
            .map(|r| SweepRow {
                p: round12(r.p),
                eof: round12(r.eof),
                qd_analytic: round12(r.qd_analytic),
                qd_numeric: r.qd_numeric.map(round12),
                s_ab: round12(r.s_ab),
                s_a: round12(r.s_a),
            })
            .collect();
        return write_json(out, &rounded);
    }
    let mut header = vec!["p", "eof", "qd_analytic"];
    if with_oracle {
        header.push("qd_numeric");
    }
    header.extend(["s_ab", "s_a"]);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![num(r.p), num(r.eof), num(r.qd_analytic)];
            if with_oracle {
                row.push(opt_num(r.qd_numeric));
            }
            row.extend([num(r.s_ab), num(r.s_a)]);
            row
        })
        .collect();
    write_table(out, &header, &cells, format)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub state: String,
    pub p_c: f64,
    pub p_i: f64,
    /// CHSH threshold from numerical maximization; not a tabulated value.
    pub p_b_derived: Option<f64>,
}

pub fn cmd_table1(cfg: &OptimizerConfig) -> Result<Vec<Table1Row>, CliError> {
    NamedState::TABLE
        .iter()
        .map(|s| {
            let psi = s.state();
            Ok(Table1Row {
                state: s.id(),
                p_c: p_critical(&psi),
                p_i: intersection_point(&psi, cfg)?,
                p_b_derived: bell_threshold(&psi, cfg)?,
            })
        })
        .collect()
}

pub fn write_table1(
    out: &mut dyn Write,
    rows: &[Table1Row],
    format: Format,
) -> Result<(), CliError> {
    if format == Format::Json {
        let rounded: Vec<Table1Row> = rows
            .iter()
            .map(|r| Table1Row {
                state: r.state.clone(),
                p_c: round12(r.p_c),
                p_i: round12(r.p_i),
                p_b_derived: r.p_b_derived.map(round12),
            })
            .collect();
        return write_json(out, &rounded);
    }
    let header = match format {
        Format::Csv => ["state", "p_c", "p_i", "p_b_derived"],
        _ => ["state", "p_c", "p_i", "p_b (derived)"],
    };
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.state.clone(),
                num(r.p_c),
                num(r.p_i),
                opt_num(r.p_b_derived),
            ]
        })
        .collect();
    write_table(out, &header, &cells, format)
}
