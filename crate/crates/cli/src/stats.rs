//! `stats`: dataset counters, reciprocity, triad census and degree
//! histograms. One combined JSON document on stdout, or separate report
//! files under an output directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;

use signedrel::graph::GraphStats;
use signedrel::netstats::{
    degree_distribution, reciprocity, triad_census, DegreeKind, ReciprocityReport, TriadCensus,
};
use signedrel::{Error, SignedGraph};

use crate::DataArgs;

#[derive(Args)]
pub struct StatsArgs {
    #[command(flatten)]
    data: DataArgs,

    /// Output directory for the report files (graph_stats.json,
    /// reciprocity.json, triad_census.json, degree_*.csv); without it one
    /// combined JSON document goes to stdout.
    #[arg(long, env = "SR_OUT")]
    out: Option<PathBuf>,
}

#[derive(serde::Serialize)]
struct StatsReport {
    graph: GraphStats,
    /// Directed graphs only; reciprocity is undefined otherwise.
    reciprocity: Option<ReciprocityReport>,
    triad_census: TriadCensus,
    /// Histogram degree -> node count per degree kind.
    degrees: BTreeMap<&'static str, BTreeMap<usize, usize>>,
}

fn applicable_kinds(g: &SignedGraph) -> impl Iterator<Item = DegreeKind> + '_ {
    DegreeKind::ALL
        .into_iter()
        .filter(|k| g.is_directed() || !k.requires_directed())
}

pub fn run(args: &StatsArgs) -> Result<(), Error> {
    let g = args.data.load()?;
    let report = StatsReport {
        graph: g.stats(),
        reciprocity: g.is_directed().then(|| reciprocity(&g)).transpose()?,
        triad_census: triad_census(&g),
        degrees: applicable_kinds(&g)
            .map(|k| Ok((k.token(), degree_distribution(&g, k)?)))
            .collect::<Result<_, Error>>()?,
    };
    match &args.out {
        None => print!("{}", pretty_json(&report)),
        Some(dir) => write_report_dir(dir, &report)?,
    }
    Ok(())
}

fn write_report_dir(dir: &Path, report: &StatsReport) -> Result<(), Error> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("graph_stats.json"), pretty_json(&report.graph))?;
    if let Some(r) = &report.reciprocity {
        fs::write(dir.join("reciprocity.json"), pretty_json(r))?;
    }
    fs::write(dir.join("triad_census.json"), pretty_json(&report.triad_census))?;
    for (token, histogram) in &report.degrees {
        let mut csv = String::from("degree,count\n");
        for (degree, count) in histogram {
            csv.push_str(&format!("{degree},{count}\n"));
        }
        fs::write(dir.join(format!("degree_{token}.csv")), csv)?;
    }
    eprintln!(
        "wrote stats reports ({} degree kinds) to {}",
        report.degrees.len(),
        dir.display()
    );
    Ok(())
}

fn pretty_json(value: &impl serde::Serialize) -> String {
    let mut json = serde_json::to_string_pretty(value).expect("reports serialize");
    json.push('\n');
    json
}
