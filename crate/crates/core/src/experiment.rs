//! Replicated benchmark runs: configuration, reference-front caching, CSV
//! results, summary statistics and solution-set dumps.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::metrics::igd;
use crate::optimizer::{run, AlgorithmParams, RunResult};
use crate::problems::{make_problem, Problem};

pub const CSV_HEADER: [&str; 7] = ["problem", "algorithm", "run", "seed", "igd", "evals", "wall_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Moead,
    Adaw,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Moead => "moead",
            Algorithm::Adaw => "adaw",
        }
    }

    pub fn is_adaptive(self) -> bool {
        self == Algorithm::Adaw
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "moead" | "moea/d" => Ok(Algorithm::Moead),
            "adaw" => Ok(Algorithm::Adaw),
            _ => Err(Error::config(format!(
                "unknown algorithm {s:?} (expected moead or adaw)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    /// Evaluation budget per run; `None` uses the problem's default.
    pub evals: Option<usize>,
    /// Population size; `None` uses the problem's default.
    pub population: Option<usize>,
    pub seed_base: u64,
    pub out_dir: PathBuf,
    /// Record wall-clock time per run. Off by default so that repeated runs
    /// produce identical files.
    pub record_timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: String::new(),
            algorithm: Algorithm::Adaw,
            runs: 30,
            evals: None,
            population: None,
            seed_base: 1,
            out_dir: PathBuf::from("results"),
            record_timing: false,
        }
    }
}

impl ExperimentConfig {
    pub fn new(problem: impl Into<String>, algorithm: Algorithm, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            problem: problem.into(),
            algorithm,
            out_dir: out_dir.into(),
            ..Self::default()
        }
    }

    /// Sets one field from its textual form. Keys match the command-line
    /// flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::config(format!("invalid {what} value {value:?}"));
        match key {
            "problem" => self.problem = value.to_string(),
            "algo" | "algorithm" => self.algorithm = value.parse()?,
            "runs" => self.runs = value.parse().map_err(|_| bad("runs"))?,
            "evals" => self.evals = Some(value.parse().map_err(|_| bad("evals"))?),
            "pop" | "population" => self.population = Some(value.parse().map_err(|_| bad("pop"))?),
            "seed" => self.seed_base = value.parse().map_err(|_| bad("seed"))?,
            "out" => self.out_dir = PathBuf::from(value),
            "timing" => self.record_timing = value.parse().map_err(|_| bad("timing"))?,
            _ => return Err(Error::config(format!("unknown configuration key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file. Blank lines and lines starting with
    /// `#` are ignored.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("expected key=value, found {line:?}"),
                });
            };
            self.set(key.trim(), value.trim()).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    /// Resolves the problem and the algorithm parameters for run `run`.
    pub fn resolve(&self) -> Result<(Problem, AlgorithmParams)> {
        if self.runs == 0 {
            return Err(Error::config("runs must be at least 1"));
        }
        let problem = make_problem(&self.problem)?;
        let n = self.population.unwrap_or(problem.default_population_size());
        let evals = self.evals.unwrap_or(problem.default_eval_budget());
        let params = AlgorithmParams::new(&problem, n, evals, self.algorithm.is_adaptive(), self.seed_base)?;
        Ok((problem, params))
    }

    pub fn results_path(&self) -> PathBuf {
        self.out_dir.join(format!("{}_{}.csv", self.file_stem(), self.algorithm))
    }

    pub fn dump_path(&self) -> PathBuf {
        self.out_dir.join(format!("{}_{}_median.txt", self.file_stem(), self.algorithm))
    }

    fn file_stem(&self) -> String {
        match make_problem(&self.problem) {
            Ok(p) => p.name().to_string(),
            Err(_) => self.problem.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub problem: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: u64,
    pub igd: f64,
    pub evals: usize,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<ResultRow>,
    /// Index into `rows` of the run whose solution set was dumped.
    pub median_run: usize,
    pub results: Vec<RunResult>,
    pub csv_path: PathBuf,
    pub dump_path: PathBuf,
}

/// Runs `cfg.runs` independent runs with seeds `seed_base + i`, scoring each
/// final population by IGD against the cached reference front. Writes the
/// result CSV and the median run's objective vectors.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let (problem, base) = cfg.resolve()?;
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let reference = reference_front(&problem, &cfg.out_dir)?;

    let mut rows = Vec::with_capacity(cfg.runs);
    let mut results = Vec::with_capacity(cfg.runs);
    for i in 0..cfg.runs {
        let seed = cfg.seed_base.wrapping_add(i as u64);
        let params = AlgorithmParams { seed, ..base.clone() };
        let started = Instant::now();
        let result = run(&problem, params)?;
        let wall_ms = if cfg.record_timing {
            started.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        };
        rows.push(ResultRow {
            problem: problem.name().to_string(),
            algorithm: cfg.algorithm.name().to_string(),
            run: i,
            seed,
            igd: igd(&reference, &result.population_objectives()),
            evals: result.evaluations,
            wall_ms,
        });
        results.push(result);
    }

    let csv_path = cfg.results_path();
    write_csv(&csv_path, &rows)?;

    let median_run = median_index(&rows);
    let row = &rows[median_run];
    let dump_path = cfg.dump_path();
    let header = [
        format!("problem {}", row.problem),
        format!("algorithm {}", row.algorithm),
        format!("seed {}", row.seed),
        format!("igd {:.5e}", row.igd),
    ];
    write_points(&dump_path, &header, &results[median_run].population_objectives())?;

    Ok(ExperimentReport {
        rows,
        median_run,
        results,
        csv_path,
        dump_path,
    })
}

/// Index of the run holding the median IGD; with an even count, the lower of
/// the two middle runs. Ties go to the earlier run.
pub fn median_index(rows: &[ResultRow]) -> usize {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a].igd.total_cmp(&rows[b].igd).then(a.cmp(&b)));
    order[(rows.len() - 1) / 2]
}

/// The problem's reference front, read from `<dir>/fronts/` if cached there
/// and generated (then cached) otherwise.
pub fn reference_front(problem: &Problem, dir: &Path) -> Result<Vec<Vec<f64>>> {
    let n = problem.reference_front_size();
    let path = dir.join("fronts").join(format!("{}_{n}.txt", problem.name()));
    if path.exists() {
        return read_points(&path);
    }
    let front = problem.sample_front(n);
    let header = [format!("reference front {} ({} points)", problem.name(), front.len())];
    write_points(&path, &header, &front)?;
    Ok(front)
}

/// Writes one point per line, whitespace separated, after `#`-prefixed
/// header lines. Values are written in shortest round-trip form.
pub fn write_points<P: AsRef<[f64]>>(path: &Path, header: &[String], points: &[P]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let mut out = String::new();
    for line in header {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for p in points {
        let line: Vec<String> = p.as_ref().iter().map(|v| format!("{v:e}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn read_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let point = line
            .split_whitespace()
            .map(str::parse::<f64>)
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })?;
        if let Some(first) = points.first() {
            let first: &Vec<f64> = first;
            if first.len() != point.len() {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("expected {} values, found {}", first.len(), point.len()),
                });
            }
        }
        points.push(point);
    }
    Ok(points)
}

pub fn write_csv(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.problem.clone(),
            r.algorithm.clone(),
            r.run.to_string(),
            r.seed.to_string(),
            format!("{:.5e}", r.igd),
            r.evals.to_string(),
            format!("{:.5e}", r.wall_ms),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("unexpected header, expected {}", CSV_HEADER.join(",")),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let parse_err = |field: &str| Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("invalid {field}"),
        };
        rows.push(ResultRow {
            problem: record[0].to_string(),
            algorithm: record[1].to_string(),
            run: record[2].parse().map_err(|_| parse_err("run"))?,
            seed: record[3].parse().map_err(|_| parse_err("seed"))?,
            igd: record[4].parse().map_err(|_| parse_err("igd"))?,
            evals: record[5].parse().map_err(|_| parse_err("evals"))?,
            wall_ms: record[6].parse().map_err(|_| parse_err("wall_ms"))?,
        });
    }
    Ok(rows)
}

/// Mean, population standard deviation and median of a set of IGD values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub sd: f64,
    pub median: f64,
}

impl Summary {
    /// `None` for an empty slice.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            0.5 * (sorted[mid - 1] + sorted[mid])
        };
        Some(Self {
            count: values.len(),
            mean,
            sd: var.sqrt(),
            median,
        })
    }
}

/// Summaries per (problem, algorithm), in order of first appearance.
pub fn aggregate(rows: &[ResultRow]) -> Vec<(String, String, Summary)> {
    let mut groups: Vec<(String, String, Vec<f64>)> = Vec::new();
    for r in rows {
        match groups
            .iter_mut()
            .find(|(p, a, _)| *p == r.problem && *a == r.algorithm)
        {
            Some(g) => g.2.push(r.igd),
            None => groups.push((r.problem.clone(), r.algorithm.clone(), vec![r.igd])),
        }
    }
    groups
        .into_iter()
        .map(|(p, a, v)| {
            let s = Summary::of(&v).expect("groups are never empty");
            (p, a, s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn row(igd: f64) -> ResultRow {
        ResultRow {
            problem: "ZDT3".into(),
            algorithm: "adaw".into(),
            run: 0,
            seed: 1,
            igd,
            evals: 100,
            wall_ms: 0.0,
        }
    }

    #[test]
    fn summary_examples() {
        let s = Summary::of(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!((s.mean, s.sd, s.median), (1.0, 0.0, 1.0));
        let s = Summary::of(&[0.0, 2.0]).unwrap();
        assert_eq!((s.mean, s.sd, s.median), (1.0, 1.0, 1.0));
        let s = Summary::of(&[5.0, 1.0, 4.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.median, 3.0);
        assert_relative_eq!(s.sd, 2f64.sqrt(), epsilon = 1e-15);
        assert!(Summary::of(&[]).is_none());
    }

    #[test]
    fn aggregate_groups_by_problem_and_algorithm() {
        let mut rows = vec![row(1.0), row(3.0)];
        let mut other = row(7.0);
        other.algorithm = "moead".into();
        rows.push(other);
        let g = aggregate(&rows);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].2.mean, 2.0);
        assert_eq!(g[1].1, "moead");
        assert_eq!(g[1].2.count, 1);
    }

    #[test]
    fn median_index_picks_lower_middle() {
        let rows: Vec<ResultRow> = [0.4, 0.1, 0.3, 0.2].into_iter().map(row).collect();
        assert_eq!(median_index(&rows), 3);
        let rows: Vec<ResultRow> = [0.5, 0.1, 0.3].into_iter().map(row).collect();
        assert_eq!(median_index(&rows), 2);
    }

    #[test]
    fn algorithm_names() {
        assert_eq!("AdaW".parse::<Algorithm>().unwrap(), Algorithm::Adaw);
        assert_eq!("moead".parse::<Algorithm>().unwrap(), Algorithm::Moead);
        assert!(matches!("nsga2".parse::<Algorithm>(), Err(Error::Config(_))));
    }

    #[test]
    fn config_keys() {
        let mut cfg = ExperimentConfig::default();
        cfg.set("problem", "DTLZ2").unwrap();
        cfg.set("algo", "moead").unwrap();
        cfg.set("runs", "3").unwrap();
        cfg.set("evals", "5000").unwrap();
        cfg.set("pop", "105").unwrap();
        cfg.set("seed", "9").unwrap();
        cfg.set("timing", "true").unwrap();
        assert_eq!(cfg.algorithm, Algorithm::Moead);
        assert_eq!((cfg.runs, cfg.evals, cfg.population, cfg.seed_base), (3, Some(5000), Some(105), 9));
        assert!(cfg.record_timing);
        assert!(cfg.set("runs", "many").is_err());
        assert!(cfg.set("colour", "blue").is_err());
    }

    #[test]
    fn resolve_rejects_bad_configs() {
        let mut cfg = ExperimentConfig::new("DTLZ2", Algorithm::Adaw, "x");
        assert!(cfg.resolve().is_ok());
        cfg.runs = 0;
        assert!(cfg.resolve().is_err());
        cfg.runs = 1;
        cfg.population = Some(100);
        assert!(cfg.resolve().is_err());
        cfg.population = None;
        cfg.evals = Some(10);
        assert!(cfg.resolve().is_err());
        let cfg = ExperimentConfig::new("NOPE", Algorithm::Adaw, "x");
        assert!(matches!(cfg.resolve(), Err(Error::Config(_))));
    }
}
