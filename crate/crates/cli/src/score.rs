//! `score`: resolve labeled node pairs against the loaded graph and emit
//! their relevance scores as CSV in input order.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;

use signedrel::measures::score_pairs;
use signedrel::{Error, MeasureId, MeasureSpec, NodeId, Strategy};

use crate::{write_output, DataArgs, ParamArgs};

#[derive(Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    data: DataArgs,

    /// File of `src dst` label pairs, one per line; `#` comments and blank
    /// lines are skipped, commas work as separators too.
    #[arg(long, env = "SR_PAIRS")]
    pairs: PathBuf,

    /// Measure family: cn, ji, pa, katz, rwr or ascospp.
    #[arg(long, env = "SR_MEASURE")]
    measure: String,

    /// Negative-edge strategy: signed, remove_neg or ignore_sign.
    #[arg(long, env = "SR_STRATEGY", default_value = "signed")]
    strategy: String,

    #[command(flatten)]
    params: ParamArgs,

    /// Output CSV file (default: stdout).
    #[arg(long, env = "SR_OUT")]
    out: Option<PathBuf>,
}

pub fn run(args: &ScoreArgs) -> Result<(), Error> {
    let spec = args.params.apply(MeasureSpec::new(
        args.measure.parse::<MeasureId>()?,
        args.strategy.parse::<Strategy>()?,
    ))?;
    let g = args.data.load()?;
    let labels = g
        .labels()
        .ok_or_else(|| Error::InvalidInput("graph has no label table".into()))?;

    let text = std::fs::read_to_string(&args.pairs)?;
    let mut labeled: Vec<(&str, &str)> = Vec::new();
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|f| !f.is_empty());
        let (Some(src), Some(dst), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected `src dst`, got {line:?}"),
            });
        };
        let resolve =
            |label: &str| labels.id(label).ok_or_else(|| Error::UnknownLabel(label.into()));
        pairs.push((resolve(src)?, resolve(dst)?));
        labeled.push((src, dst));
    }

    let scored = score_pairs(&g, &spec, &pairs)?;
    for w in &scored.warnings {
        eprintln!("warning: {w}");
    }
    let mut csv = String::from("src,dst,score\n");
    for ((src, dst), score) in labeled.iter().zip(&scored.scores) {
        writeln!(csv, "{src},{dst},{score:?}").expect("string write");
    }
    eprintln!("scored {} pairs with {}", pairs.len(), spec.label());
    write_output(args.out.as_deref(), &csv)
}
