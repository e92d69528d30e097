mod commands;
mod report;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Report;

#[derive(Parser)]
#[command(name = "kummerlog", version, about = "Log Picard groups, Kummer log torsors and the log class pairing")]
struct Cli {
    /// Also write a human-readable rendering to stderr.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Log Picard group of a marked base, or the class of a divisor.
    Logpic {
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Marked primes, e.g. "(2, 1+w), (3, 1+w)".
        #[arg(long = "D", default_value = "", allow_hyphen_values = true)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        div: Option<String>,
    },
    /// H^1 of mu_n in the Kummer log flat topology, both ways.
    Mun {
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long = "D", default_value = "", allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        n: u64,
    },
    /// Reduction types and component groups.
    Curve {
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long = "E", allow_hyphen_values = true)]
        e: String,
        /// A single prime; all bad primes when omitted.
        #[arg(long)]
        p: Option<String>,
    },
    /// The log class pairing of x with a torsion point y.
    Pair {
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long = "E", allow_hyphen_values = true)]
        e: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

fn args(pairs: &[(&str, Option<&String>)]) -> BTreeMap<String, String> {
    pairs.iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v.clone()))).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match &cli.cmd {
        Cmd::Logpic { ring, d, div } => {
            let mut r = Report::new("logpic", args(&[("ring", Some(ring)), ("D", Some(d)), ("div", div.as_ref())]));
            let out = commands::logpic(&mut r, ring, d, div.as_deref());
            r.finish(out)
        }
        Cmd::Mun { ring, d, n } => {
            let ns = n.to_string();
            let mut r = Report::new("mun", args(&[("ring", Some(ring)), ("D", Some(d)), ("n", Some(&ns))]));
            let out = commands::mun(&mut r, ring, d, *n);
            r.finish(out)
        }
        Cmd::Curve { ring, e, p } => {
            let mut r = Report::new("curve", args(&[("ring", Some(ring)), ("E", Some(e)), ("p", p.as_ref())]));
            let out = commands::curve(&mut r, ring, e, p.as_deref());
            r.finish(out)
        }
        Cmd::Pair { ring, e, x, y } => {
            let mut r = Report::new(
                "pair",
                args(&[("ring", Some(ring)), ("E", Some(e)), ("x", Some(x)), ("y", Some(y))]),
            );
            let out = commands::pair(&mut r, ring, e, x, y);
            r.finish(out)
        }
    };
    // through Value so that keys come out sorted at every level
    let doc = serde_json::to_value(&report).expect("report serializes");
    println!("{}", serde_json::to_string_pretty(&doc).expect("value serializes"));
    if cli.pretty {
        eprint!("{}", report.pretty());
    } else if let Some(e) = &report.error {
        eprintln!("error: {}", e.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
