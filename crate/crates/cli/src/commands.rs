use std::fs;
use std::path::{Path, PathBuf};

use nilcone::census::{
    census_an, census_tn_strata, chi, kostant, small_loop_census, top_stratum_components,
    CensusError, ChiTable, PsiOracle,
};
use nilcone::partition::enumerate_proper_pairings;
use nilcone::probe::{commutator_type_histogram, probe_component_dim};
use nilcone::rep::{build_an_point, build_tn_point, loop_pair_search, verify_point};
use nilcone::{DimensionVector, Multipartition, ProperPairing, Rational, Rep};
use serde_json::{json, Value};

use crate::{CensusKind, Cli, Command, Format, KindArg, Outcome};

/// The χ memo plus where (and whether) it persists.
struct Cache {
    table: ChiTable,
    path: Option<PathBuf>,
    loaded: usize,
}

impl Cache {
    fn open(cli: &Cli) -> Self {
        let path = if cli.no_cache {
            None
        } else {
            cli.cache.clone().or_else(|| {
                dirs::data_local_dir().map(|d| d.join("nilcone").join("chi-cache.json"))
            })
        };
        let table = match &path {
            Some(p) => ChiTable::load(p).unwrap_or_else(|e| {
                eprintln!("warning: ignoring χ cache {}: {e}", p.display());
                ChiTable::new()
            }),
            None => ChiTable::new(),
        };
        let loaded = table.len();
        Self {
            table,
            path,
            loaded,
        }
    }

    fn persist(&self) {
        if let Some(p) = &self.path {
            if self.table.len() > self.loaded {
                if let Err(e) = self.table.save(p) {
                    eprintln!("warning: could not write χ cache {}: {e}", p.display());
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Chi { lambda, mu } => {
            let mut cache = Cache::open(cli);
            let result = chi(lambda, mu, &mut cache.table);
            cache.persist();
            match result {
                Ok(x) => emit(
                    cli,
                    &json!({"lambda": lambda, "mu": mu, "chi": x}),
                    &x.to_string(),
                ),
                Err(e) => Outcome::Internal(e.to_string()),
            }
        }
        Command::Kostant { v } => {
            let k = kostant(v);
            emit(cli, &json!({"v": v, "kostant": k}), &k.to_string())
        }
        Command::Census { which } => census(cli, which),
        Command::Build {
            kind,
            v,
            strata,
            pairings,
        } => build(cli, *kind, v, strata, pairings.as_deref()),
        Command::Verify { file, strata } => {
            let rep = match read_rep(file) {
                Ok(r) => r,
                Err(o) => return o,
            };
            let report = verify_point(&rep, strata);
            let mut text = format!(
                "moment map zero   {}\nnilpotent (path)  {}\nnilpotent (local) {}\n",
                report.moment_map_zero,
                report.nilpotent_path,
                report
                    .nilpotent_local
                    .map_or("n/a".to_string(), |b| b.to_string()),
            );
            for (i, (found, want)) in report
                .jordan_types
                .iter()
                .zip(strata.entries().iter().map(Some).chain(std::iter::repeat(None)))
                .enumerate()
            {
                let found = found.as_ref().map_or("not nilpotent".to_string(), |p| p.to_string());
                let want = want.map_or("-".to_string(), |p| p.to_string());
                text.push_str(&format!("vertex {:<3} {found:<14} expected {want}\n", i + 1));
            }
            text.push_str(if report.pass { "PASS" } else { "FAIL" });
            let out = emit(cli, &json!(report), &text);
            match out {
                Outcome::Pass if !report.pass => Outcome::Fail,
                o => o,
            }
        }
        Command::Probe { file, predict } => {
            let rep = match read_rep(file) {
                Ok(r) => r,
                Err(o) => return o,
            };
            let report = probe_component_dim(&rep, *predict);
            let text = format!(
                "chart            {:?}\nambient dim      {}\nchart dim        {}\njacobian rank    {}\nlocal dim bound  {}\npredicted        {}\ncertified        {}",
                report.chart,
                report.ambient_dim,
                report.chart_dim,
                report.jac_rank,
                report.local_dim_bound,
                report.predicted_dim.map_or("-".to_string(), |p| p.to_string()),
                report.certified,
            );
            let out = emit(cli, &json!(report), &text);
            match out {
                Outcome::Pass if predict.is_some() && !report.certified => Outcome::Fail,
                o => o,
            }
        }
        Command::Histogram { d } => {
            if *d == 0 || cli.trials == 0 {
                return Outcome::Usage("histogram needs d ≥ 1 and trials ≥ 1".into());
            }
            let h = commutator_type_histogram::<Rational>(*d, cli.trials, cli.seed);
            let mut text = String::new();
            let mut rows: Vec<_> = h.iter().collect();
            rows.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
            for (p, n) in &rows {
                text.push_str(&format!("{:<16} {n}\n", p.to_string()));
            }
            let entries: Vec<Value> = rows
                .iter()
                .map(|(p, n)| json!({"lambda": p, "count": n}))
                .collect();
            emit(
                cli,
                &json!({"d": d, "trials": cli.trials, "seed": cli.seed, "histogram": entries}),
                text.trim_end(),
            )
        }
    }
}

fn census(cli: &Cli, which: &CensusKind) -> Outcome {
    let mut cache = Cache::open(cli);
    let result = census_inner(cli, which, &mut cache.table);
    cache.persist();
    match result {
        Ok(o) => o,
        Err(CensusError::Chi(e)) => Outcome::Internal(e.to_string()),
        Err(e) => Outcome::Usage(e.to_string()),
    }
}

fn census_inner(cli: &Cli, which: &CensusKind, table: &mut ChiTable) -> Result<Outcome, CensusError> {
    Ok(match which {
        CensusKind::An { v } => {
            let c = census_an(v, table)?;
            let mut text = format!("count {}\ndim   {}\n", c.count, c.dim);
            for (s, x) in &c.strata {
                if *x > 0 {
                    text.push_str(&format!("  {s}  χ = {x}\n"));
                }
            }
            let strata: Vec<Value> = c
                .strata
                .iter()
                .map(|(s, x)| json!({"stratum": s, "chi": x}))
                .collect();
            emit(
                cli,
                &json!({"v": v, "count": c.count, "dim": c.dim, "consistent": c.is_consistent(), "strata": strata}),
                text.trim_end(),
            )
        }
        CensusKind::Tn { v } if v.last() <= 2 => {
            let (count, dim) = small_loop_census(v)?;
            emit(
                cli,
                &json!({"v": v, "count": count, "dim": dim}),
                &format!("count {count}\ndim   {dim}"),
            )
        }
        CensusKind::Tn { v } | CensusKind::TnStrata { v } => {
            let records = census_tn_strata(v, &PsiOracle::standard(), table)?;
            let mut text = String::new();
            for r in &records {
                text.push_str(&format!("{:<28} count {:<14} dim {}\n", r.stratum.to_string(), r.count.to_string(), r.dim));
            }
            emit(cli, &json!({"v": v, "strata": records}), text.trim_end())
        }
        CensusKind::TnTop { v } => {
            let t = top_stratum_components(v, table)?;
            emit(
                cli,
                &json!(t),
                &format!("lambda {}\ncount  {}\ndim    {}\ncodim  {}", t.lambda, t.count, t.dim, t.codim),
            )
        }
    })
}

fn pick_pairings(strata: &Multipartition, choice: Option<&str>) -> Result<Vec<ProperPairing>, String> {
    let edges: Vec<_> = strata.entries().windows(2).collect();
    let picks: Vec<usize> = match choice {
        None => vec![0; edges.len()],
        Some(s) => s
            .split(';')
            .map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad pairing index {x:?}: {e}")))
            .collect::<Result<_, _>>()?,
    };
    if picks.len() != edges.len() {
        return Err(format!("{} edges need {} pairing indices", edges.len(), edges.len()));
    }
    edges
        .iter()
        .zip(picks)
        .enumerate()
        .map(|(k, (w, i))| {
            let all = enumerate_proper_pairings(&w[0], &w[1]);
            all.get(i).cloned().ok_or_else(|| {
                format!(
                    "edge {}: {} and {} have {} proper pairings, index {i} requested",
                    k + 1,
                    w[0],
                    w[1],
                    all.len()
                )
            })
        })
        .collect()
}

fn build(
    cli: &Cli,
    kind: KindArg,
    v: &DimensionVector,
    strata: &Multipartition,
    pairings: Option<&str>,
) -> Outcome {
    if let Err(e) = strata.check_sizes(v) {
        return Outcome::Usage(e.to_string());
    }
    let pairings = match pick_pairings(strata, pairings) {
        Ok(p) => p,
        Err(e) => return Outcome::Usage(e),
    };
    let rep: Rep = match kind {
        KindArg::An => match build_an_point(strata, &pairings) {
            Ok(r) => r,
            Err(e) => return Outcome::Usage(e.to_string()),
        },
        KindArg::Tn => {
            let last = strata.last();
            let Some((x, y)) = loop_pair_search::<Rational>(last.size(), last, cli.trials, cli.seed) else {
                eprintln!(
                    "no loop pair with commutator type {last} in {} trials (seed {})",
                    cli.trials, cli.seed
                );
                return Outcome::Fail;
            };
            match build_tn_point(strata, &pairings, (&x, &y)) {
                Ok(r) => r,
                Err(e) => return Outcome::Usage(e.to_string()),
            }
        }
    };
    write_out(cli, &rep.to_json())
}

fn read_rep(path: &Path) -> Result<Rep, Outcome> {
    let s = fs::read_to_string(path)
        .map_err(|e| Outcome::Usage(format!("cannot read {}: {e}", path.display())))?;
    Rep::from_json(&s).map_err(|e| Outcome::Usage(format!("{}: {e}", path.display())))
}

fn write_out(cli: &Cli, text: &str) -> Outcome {
    match &cli.out {
        Some(p) => match fs::write(p, format!("{text}\n")) {
            Ok(()) => Outcome::Pass,
            Err(e) => Outcome::Usage(format!("cannot write {}: {e}", p.display())),
        },
        None => {
            println!("{text}");
            Outcome::Pass
        }
    }
}

fn emit(cli: &Cli, value: &Value, table: &str) -> Outcome {
    match cli.format {
        Format::Json => write_out(cli, &value.to_string()),
        Format::Table => write_out(cli, table),
    }
}
