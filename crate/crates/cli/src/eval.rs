//! `eval`: run the link-sign or tie-strength experiment for one
//! measure/strategy combination or the full sweep, aggregating the metric
//! over split seeds. One table row per combination; a failing row is
//! reported in place and does not abort the rest of the sweep.

use std::path::PathBuf;

use clap::Args;

use signedrel::eval::{eval_link_prediction, eval_tie_strength, Setting, Task};
use signedrel::{Error, MeasureId, MeasureSpec, SignedGraph, Strategy};

use crate::{write_output, DataArgs, ParamArgs};

#[derive(Args)]
pub struct EvalArgs {
    /// Experiment: `link` (AUC over seeded splits) or `tie` (RMSE against
    /// normalized edge ratings).
    #[arg(value_parser = ["link", "tie"])]
    task: String,

    #[command(flatten)]
    data: DataArgs,

    /// `undirected` (symmetrize first) or `directed`.
    #[arg(long, env = "SR_SETTING", default_value = "undirected")]
    setting: String,

    /// Measure family token, or `all` for the full sweep.
    #[arg(long, env = "SR_MEASURE", default_value = "all")]
    measure: String,

    /// Strategy token, or `all` for every strategy.
    #[arg(long, env = "SR_STRATEGY", default_value = "all")]
    strategy: String,

    #[command(flatten)]
    params: ParamArgs,

    /// Train fraction of the edge set (link prediction only).
    #[arg(long, env = "SR_RATIO", default_value_t = 0.8)]
    ratio: f64,

    /// Single split seed; shorthand for `--seeds SEED`.
    #[arg(long, env = "SR_SEED", conflicts_with = "seeds")]
    seed: Option<u64>,

    /// Comma-separated split seeds to average over (default: 1,2,3,4,5).
    #[arg(long, env = "SR_SEEDS", value_delimiter = ',')]
    seeds: Option<Vec<u64>>,

    /// Output file (default: stdout).
    #[arg(long, env = "SR_OUT")]
    out: Option<PathBuf>,

    /// `json` (per-seed detail) or `csv` (summary table).
    #[arg(long, env = "SR_OUT_FORMAT", default_value = "json")]
    out_format: String,
}

enum OutFormat {
    Json,
    Csv,
}

/// One (measure, strategy) result row aggregated over seeds.
#[derive(serde::Serialize)]
struct SweepRow {
    label: String,
    measure: &'static str,
    strategy: &'static str,
    task: Task,
    setting: Setting,
    beta: f64,
    gamma: u32,
    c: f64,
    tol: f64,
    max_iter: u32,
    /// Seeds that completed, in run order.
    seeds: Vec<u64>,
    /// Per-seed metric (AUC or RMSE), parallel to `seeds`.
    values: Vec<f64>,
    mean: Option<f64>,
    std_dev: Option<f64>,
    n_test: Vec<usize>,
    warnings: Vec<String>,
    error: Option<String>,
}

pub fn run(args: &EvalArgs) -> Result<(), Error> {
    let task = match args.task.as_str() {
        "link" => Task::LinkPrediction,
        _ => Task::TieStrength,
    };
    let setting: Setting = args.setting.parse()?;
    let out_format = match args.out_format.to_ascii_lowercase().as_str() {
        "json" => OutFormat::Json,
        "csv" => OutFormat::Csv,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown output format {other:?} (expected json or csv)"
            )))
        }
    };
    let seeds = match (&args.seeds, args.seed) {
        (Some(list), _) => list.clone(),
        (None, Some(one)) => vec![one],
        (None, None) => vec![1, 2, 3, 4, 5],
    };
    if seeds.is_empty() {
        return Err(Error::InvalidParameter(
            "--seeds must name at least one seed".into(),
        ));
    }
    let specs = enumerate(args, setting)?;
    let g = args.data.load()?;

    let mut rows = Vec::with_capacity(specs.len());
    let mut failures = Vec::new();
    for spec in &specs {
        let (row, failure) = run_row(&g, spec, task, setting, args.ratio, &seeds);
        match (&row.mean, &row.error) {
            (Some(mean), _) => eprintln!(
                "{}: {} = {:.4} over {} seed(s)",
                row.label,
                metric_name(task),
                mean,
                row.seeds.len()
            ),
            (None, Some(e)) => eprintln!("{}: failed: {e}", row.label),
            (None, None) => {}
        }
        if let Some(f) = failure {
            failures.push(f);
        }
        rows.push(row);
    }

    let payload = match out_format {
        OutFormat::Json => {
            let mut json = serde_json::to_string_pretty(&rows).expect("rows serialize");
            json.push('\n');
            json
        }
        OutFormat::Csv => rows_to_csv(&rows),
    };
    write_output(args.out.as_deref(), &payload)?;

    // Row failures are isolated, but a run where nothing succeeded should
    // not exit 0.
    if failures.len() == rows.len() {
        return Err(failures.swap_remove(0));
    }
    Ok(())
}

/// Expand the measure/strategy selectors into fully parameterized specs, in
/// result-table row order. Sweeps in the directed setting skip the local
/// families, which are only defined on undirected graphs.
fn enumerate(args: &EvalArgs, setting: Setting) -> Result<Vec<MeasureSpec>, Error> {
    let measures: Vec<MeasureId> = match args.measure.as_str() {
        "all" => MeasureId::ALL.to_vec(),
        token => vec![token.parse()?],
    };
    let strategies: Vec<Strategy> = match args.strategy.as_str() {
        "all" => Strategy::ALL.to_vec(),
        token => vec![token.parse()?],
    };
    let sweep = args.measure == "all" || args.strategy == "all";
    let mut specs = Vec::new();
    for &measure in &measures {
        if sweep && setting == Setting::Directed && measure.is_local() {
            continue;
        }
        for &strategy in &strategies {
            specs.push(args.params.apply(MeasureSpec::new(measure, strategy))?);
        }
    }
    Ok(specs)
}

fn run_row(
    g: &SignedGraph,
    spec: &MeasureSpec,
    task: Task,
    setting: Setting,
    ratio: f64,
    seeds: &[u64],
) -> (SweepRow, Option<Error>) {
    let mut row = SweepRow {
        label: spec.label(),
        measure: spec.measure.token(),
        strategy: spec.strategy.token(),
        task,
        setting,
        beta: spec.beta,
        gamma: spec.gamma,
        c: spec.c,
        tol: spec.tol,
        max_iter: spec.max_iter,
        seeds: Vec::new(),
        values: Vec::new(),
        mean: None,
        std_dev: None,
        n_test: Vec::new(),
        warnings: Vec::new(),
        error: None,
    };
    let mut failure = None;
    let record = |row: &mut SweepRow, seed_tag: u64, report: signedrel::eval::EvalReport| {
        row.seeds.push(seed_tag);
        row.values.push(report.metric_value);
        row.n_test.push(report.n_test);
        row.warnings.extend(
            report
                .warnings
                .into_iter()
                .map(|w| format!("seed {seed_tag}: {w}")),
        );
    };
    match task {
        Task::LinkPrediction => {
            for &seed in seeds {
                match eval_link_prediction(g, spec, ratio, seed, setting) {
                    Ok(report) => record(&mut row, seed, report),
                    Err(e) => {
                        row.error = Some(format!("seed {seed}: {e}"));
                        failure = Some(e);
                        break;
                    }
                }
            }
        }
        // The tie-strength protocol has no random split; seeds are ignored.
        Task::TieStrength => match eval_tie_strength(g, spec, setting) {
            Ok(report) => {
                let seed = report.split_seed;
                record(&mut row, seed, report);
            }
            Err(e) => {
                row.error = Some(e.to_string());
                failure = Some(e);
            }
        },
    }
    if row.error.is_none() && !row.values.is_empty() {
        let mean = row.values.iter().sum::<f64>() / row.values.len() as f64;
        let var = row
            .values
            .iter()
            .map(|v| (v - mean).powi(2))
            .sum::<f64>()
            / row.values.len() as f64;
        row.mean = Some(mean);
        row.std_dev = Some(var.sqrt());
    }
    (row, failure)
}

fn metric_name(task: Task) -> &'static str {
    match task {
        Task::LinkPrediction => "AUC",
        Task::TieStrength => "RMSE",
    }
}

fn task_token(task: Task) -> &'static str {
    match task {
        Task::LinkPrediction => "link_prediction",
        Task::TieStrength => "tie_strength",
    }
}

fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "label,measure,strategy,task,setting,beta,gamma,c,tol,max_iter,n_seeds,mean,std_dev,error\n",
    );
    for r in rows {
        let opt = |v: Option<f64>| v.map(|v| format!("{v:?}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{:?},{},{:?},{:?},{},{},{},{},{}\n",
            r.label,
            r.measure,
            r.strategy,
            task_token(r.task),
            r.setting.token(),
            r.beta,
            r.gamma,
            r.c,
            r.tol,
            r.max_iter,
            r.values.len(),
            opt(r.mean),
            opt(r.std_dev),
            csv_field(r.error.as_deref().unwrap_or("")),
        ));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_fields_escape_commas_and_quotes() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
