//! Parameter sweeps: every `(field, f, g, n)` of a set of families, one CSV
//! row each.
//!
//! ```toml
//! [[family]]
//! fields = ["3", "5"]
//! f = ["irreducible:2"]        # or polynomials, or "monic:k"
//! g = ["x^2+{c}"]              # {c} runs over every field element
//! nmin = 0                     # optional
//! nmax = 3
//! ```

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;

use super::{class_of, output::decimal, parse_g, parse_poly, CliError, CliResult, EXIT_OK};
use crate::classify::p_reduction;
use crate::config::Config;
use crate::error::Error;
use crate::field::Field;
use crate::poly::{parse_field, Poly};
use crate::profile::profile_direct;

pub const SWEEP_HEADER: [&str; 16] =
    ["q", "f", "g", "n", "E", "e", "Delta", "M", "m", "N", "A", "A_decimal", "class", "log_d_N", "log_d_M", "M_over_n"];

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct SweepPlan {
    #[serde(default)]
    family: Vec<Family>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Family {
    #[serde(default)]
    name: Option<String>,
    fields: Vec<String>,
    f: Vec<String>,
    g: Vec<String>,
    #[serde(default)]
    nmin: u32,
    nmax: u32,
}

/// One `(f, g)` pair; its rows cover the family's `n` range.
struct Job {
    f: Poly,
    g: Poly,
    g_text: String,
    nmin: u32,
    nmax: u32,
}

fn expand_f(field: &Field, text: &str) -> CliResult<Vec<Poly>> {
    let text = text.trim();
    let degree = |s: &str| -> CliResult<usize> {
        s.trim().parse().map_err(|_| CliError::Usage(format!("sweep: invalid degree in f entry '{text}'")))
    };
    if let Some(k) = text.strip_prefix("irreducible:") {
        return Ok(Poly::monic_irreducibles(field, degree(k)?)?);
    }
    if let Some(k) = text.strip_prefix("monic:") {
        return Ok(Poly::monic_of_degree(field, degree(k)?)?);
    }
    Ok(vec![parse_poly(field, "f", text)?])
}

/// Substitutes each field element for `{c}`; other entries pass through.
fn expand_g(field: &Field, text: &str) -> Vec<String> {
    if !text.contains("{c}") {
        return vec![text.to_string()];
    }
    field
        .elements()
        .map(|c| {
            let c = c.to_string();
            let c = if field.is_prime_field() { c } else { format!("({c})") };
            text.replace("{c}", &c)
        })
        .collect()
}

fn jobs(plan: &SweepPlan) -> CliResult<Vec<Job>> {
    let mut jobs = Vec::new();
    for (i, fam) in plan.family.iter().enumerate() {
        let label = fam.name.clone().unwrap_or_else(|| format!("#{}", i + 1));
        if fam.nmin > fam.nmax {
            return Err(CliError::Usage(format!("sweep family {label}: empty n range")));
        }
        for field_text in &fam.fields {
            let field =
                parse_field(field_text, None).map_err(|e| CliError::Usage(format!("sweep family {label}: {e}")))?;
            let fs = fam.f.iter().map(|t| expand_f(&field, t)).collect::<CliResult<Vec<_>>>()?.concat();
            let gs: Vec<String> = fam.g.iter().flat_map(|t| expand_g(&field, t)).collect();
            for f in &fs {
                for g_text in &gs {
                    let g = parse_g(&field, g_text)?.poly;
                    jobs.push(Job { f: f.clone(), g, g_text: g_text.clone(), nmin: fam.nmin, nmax: fam.nmax });
                }
            }
        }
    }
    Ok(jobs)
}

fn log_ratio(x: u64, d: usize) -> String {
    format!("{:.6}", (x as f64).ln() / (d as f64).ln())
}

/// Rows of one job, plus a warning when the degree cap cut the range short.
fn run_job(job: &Job, cfg: &Config) -> CliResult<(Vec<Vec<String>>, Option<String>)> {
    let class = class_of(&job.f, &job.g)?.map_or("linear", |c| c.name());
    let d = p_reduction(&job.g)?.d;
    let q = job.f.field().order().to_string();
    let mut rows = Vec::new();
    for n in job.nmin..=job.nmax {
        let p = match profile_direct(&job.f, &job.g, n, cfg) {
            Ok(p) => p,
            Err(e @ Error::DegreeOverflow { .. }) => {
                return Ok((rows, Some(format!("f={} g={} stopped at n={n}: {e}", job.f, job.g_text))));
            }
            Err(e) => return Err(e.into()),
        };
        let logs = |x: u64| if d >= 2 { log_ratio(x, d) } else { String::new() };
        rows.push(vec![
            q.clone(),
            job.f.to_string(),
            job.g.to_string(),
            n.to_string(),
            p.max_mult.to_string(),
            p.min_mult.to_string(),
            p.delta.to_string(),
            p.max_deg.to_string(),
            p.min_deg.to_string(),
            p.count.to_string(),
            format!("{}/{}", p.delta, p.count),
            decimal(p.delta, p.count),
            class.to_string(),
            logs(p.count),
            logs(p.max_deg),
            if n == 0 { String::new() } else { decimal(p.max_deg, n as u64) },
        ]);
    }
    Ok((rows, None))
}

/// Runs a sweep file and writes its CSV to `out`, in file order whatever
/// the number of worker threads.
pub(super) fn cmd_sweep(
    path: &Path,
    threads: usize,
    cfg: &Config,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read sweep file {}: {e}", path.display())))?;
    let rows = sweep_csv_rows(&text, threads, cfg)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER).map_err(std::io::Error::from)?;
    for r in rows.0 {
        w.write_record(r).map_err(std::io::Error::from)?;
    }
    w.flush()?;
    drop(w);
    for warning in rows.1 {
        writeln!(err, "warning: {warning}")?;
    }
    Ok(EXIT_OK)
}

type Rows = (Vec<Vec<String>>, Vec<String>);

fn sweep_csv_rows(text: &str, threads: usize, cfg: &Config) -> CliResult<Rows> {
    let plan: SweepPlan = toml::from_str(text).map_err(|e| CliError::Usage(format!("sweep file: {e}")))?;
    let jobs = jobs(&plan)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} workers: {e}")))?;
    let results: Vec<_> = pool.install(|| jobs.par_iter().map(|j| run_job(j, cfg)).collect());
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for r in results {
        let (job_rows, warning) = r?;
        rows.extend(job_rows);
        warnings.extend(warning);
    }
    Ok((rows, warnings))
}
