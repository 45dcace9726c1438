use ansatz_core::analysis::{gate_counts, gradient_variance, landscape_scan};
use ansatz_core::expressibility::expressibility_with_histogram;
use ansatz_core::ga::{evolve_with_progress, GaConfig};
use ansatz_core::hamiltonian::{ground_energy, load_hamiltonian, tfim};
use ansatz_core::seed::rng_from_seed;
use ansatz_core::vqe::{run_vqe_with_reference, InitMode, VqeConfig};
use ansatz_core::{CircuitGenome, GateSet, PauliHamiltonian};
use serde::Serialize;
use std::path::{Path, PathBuf};

use crate::circuit_file::{self, CircuitFile, Provenance};
use crate::error::CliError;
use crate::output::{fmt_f64, write_json, Csv, ManifestBuilder};
use crate::{
    CountsArgs, EvolveArgs, ExpressArgs, GradvarArgs, GroundArgs, HamiltonianArgs, LandscapeArgs,
    VqeArgs,
};

pub struct Context {
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
}

impl Context {
    fn seed_or(&self, fallback: Option<u64>) -> u64 {
        self.seed.or(fallback).unwrap_or_else(rand::random)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

// ---------------------------------------------------------------- evolve

/// Parses "16", "1..24" (inclusive) or "1,4,8".
pub fn parse_depths(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || usage(format!("cannot parse depth {spec:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let depths = if let Some((lo, hi)) = spec.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(usage(format!("empty depth range {spec:?}")));
        }
        (lo..=hi).collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if depths.contains(&0) {
        return Err(usage("depth must be ≥ 1"));
    }
    Ok(depths)
}

#[derive(Debug, Serialize)]
struct EvolveSnapshot<'a> {
    gate_set: &'a GateSet,
    depths: &'a [usize],
    ga: &'a GaConfig,
}

fn read_config(path: &Path) -> Result<(GaConfig, Option<String>, Option<String>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut table: toml::Table = text
        .parse()
        .map_err(|e| usage(format!("malformed config {}: {e}", path.display())))?;
    let take_str = |table: &mut toml::Table, key: &str| -> Result<Option<String>, CliError> {
        match table.remove(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s)),
            Some(toml::Value::Integer(i)) => Ok(Some(i.to_string())),
            Some(other) => Err(usage(format!(
                "config key {key} has unexpected value {other}"
            ))),
        }
    };
    let gate_set = take_str(&mut table, "gate_set")?;
    let depth = take_str(&mut table, "depth")?;
    let known = [
        "n_qubits",
        "population",
        "generations",
        "parents",
        "mutation_prob",
        "samples",
        "bins",
        "crossover_points",
        "master_seed",
    ];
    if let Some(k) = table.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(usage(format!(
            "unknown config key {k:?} in {}",
            path.display()
        )));
    }
    let cfg: GaConfig = table
        .try_into()
        .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))?;
    Ok((cfg, gate_set, depth))
}

pub fn evolve(ctx: &Context, a: EvolveArgs) -> Result<(), CliError> {
    let (mut cfg, file_gate_set, file_depth, file_seed) = match &a.config {
        Some(p) => {
            let (cfg, gs, depth) = read_config(p)?;
            let seed = cfg.master_seed;
            (cfg, gs, depth, Some(seed))
        }
        None => (GaConfig::default(), None, None, None),
    };
    let gate_set_spec = a.gate_set.or(file_gate_set).unwrap_or_else(|| "A".into());
    let gate_set = GateSet::parse(&gate_set_spec)?;
    let depths = match a.depth.or(file_depth) {
        Some(s) => parse_depths(&s)?,
        None => vec![cfg.depth],
    };
    if let Some(v) = a.qubits {
        cfg.n_qubits = v;
    }
    if let Some(v) = a.population {
        cfg.population = v;
    }
    if let Some(v) = a.generations {
        cfg.generations = v;
    }
    if let Some(v) = a.parents {
        cfg.parents = v;
    }
    if let Some(v) = a.mutation {
        cfg.mutation_prob = v;
    }
    if let Some(v) = a.samples {
        cfg.samples = v;
    }
    if let Some(v) = a.bins {
        cfg.bins = v;
    }
    if let Some(v) = a.crossover_points {
        cfg.crossover_points = v;
    }
    cfg.master_seed = ctx.seed_or(file_seed);
    cfg.depth = depths[0];
    for &d in &depths {
        GaConfig {
            depth: d,
            ..cfg.clone()
        }
        .validate()?;
    }

    let mut manifest = ManifestBuilder::new(&ctx.out_dir, "evolve", cfg.master_seed);
    manifest.config(&EvolveSnapshot {
        gate_set: &gate_set,
        depths: &depths,
        ga: &cfg,
    });

    let sweep = depths.len() > 1;
    let mut sweep_csv = Csv::new(&[
        "depth",
        "best_jsd",
        "best_generation",
        "num_params",
        "num_gates",
    ]);
    for &depth in &depths {
        let run_cfg = GaConfig {
            depth,
            ..cfg.clone()
        };
        let prefix = if sweep {
            PathBuf::from(format!("depth_{depth:02}"))
        } else {
            PathBuf::new()
        };
        let report = evolve_with_progress(&run_cfg, &gate_set, |s| {
            eprintln!(
                "depth {depth} generation {}: best {:.6} mean {:.6} running {:.6}",
                s.generation, s.best_jsd, s.mean_jsd, s.running_best
            );
        })?;

        let mut trace = Csv::new(&["generation", "best_jsd", "mean_jsd", "wall_ms"]);
        for s in &report.history {
            trace.row(&[
                s.generation.to_string(),
                fmt_f64(s.best_jsd),
                fmt_f64(s.mean_jsd),
                fmt_f64(s.wall_ms),
            ]);
        }
        let file = CircuitFile::from_genome(
            &report.best_genome,
            Some(Provenance {
                seed: run_cfg.master_seed,
                generation: Some(report.best_generation),
                jsd: Some(report.best_score),
                note: None,
            }),
        );
        circuit_file::save(&manifest.artifact(prefix.join("circuit.json")), &file)?;
        trace.write(&manifest.artifact(prefix.join("trace.csv")))?;
        sweep_csv.row(&[
            depth.to_string(),
            fmt_f64(report.best_score),
            report.best_generation.to_string(),
            report.best_genome.num_params().to_string(),
            report.best_genome.num_gates().to_string(),
        ]);
    }
    if sweep {
        sweep_csv.write(&manifest.artifact("sweep.csv"))?;
    }
    manifest.finish()?;
    Ok(())
}

// ---------------------------------------------------------------- express

#[derive(Debug, Serialize)]
struct ExpressReport {
    genome_id: String,
    n_qubits: usize,
    jsd: f64,
    sample_count: usize,
    bin_count: usize,
    seed: u64,
}

fn genome_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

pub fn express(ctx: &Context, a: ExpressArgs) -> Result<(), CliError> {
    let (_, genome) = circuit_file::load(&a.circuit)?;
    let seed = ctx.seed_or(None);
    let mut manifest = ManifestBuilder::new(&ctx.out_dir, "express", seed);
    manifest.config(&serde_json::json!({
        "circuit": a.circuit,
        "samples": a.samples,
        "bins": a.bins,
    }));
    let (score, hist) = expressibility_with_histogram(&genome, a.samples, a.bins, seed)?;
    let report = ExpressReport {
        genome_id: genome_id(&a.circuit),
        n_qubits: genome.n_qubits(),
        jsd: score.jsd,
        sample_count: score.sample_count,
        bin_count: score.bin_count,
        seed: score.seed,
    };
    write_json(&manifest.artifact("express.json"), &report)?;

    let edges = hist.bin_edges();
    let mut csv = Csv::new(&["bin", "lower", "upper", "empirical_prob", "haar_prob"]);
    for b in 0..hist.bin_count {
        csv.row(&[
            b.to_string(),
            fmt_f64(edges[b]),
            fmt_f64(edges[b + 1]),
            fmt_f64(hist.empirical_prob[b]),
            fmt_f64(hist.haar_prob[b]),
        ]);
    }
    csv.write(&manifest.artifact("histogram.csv"))?;
    manifest.finish()?;
    Ok(())
}

// ---------------------------------------------------------------- Hamiltonians

#[derive(Debug, Serialize)]
struct HamiltonianSpec {
    source: String,
    n_qubits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    coupling: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<f64>,
}

fn resolve_hamiltonian(
    a: &HamiltonianArgs,
    default_qubits: Option<usize>,
) -> Result<(PauliHamiltonian, HamiltonianSpec), CliError> {
    if let Some(path) = &a.hamiltonian {
        if !path.exists() {
            return Err(usage(format!(
                "Hamiltonian file not found: {}",
                path.display()
            )));
        }
        let h = load_hamiltonian(path).map_err(|e| match e {
            ansatz_core::Error::Io(io) => {
                usage(format!("cannot read Hamiltonian {}: {io}", path.display()))
            }
            other => CliError::from(other),
        })?;
        let spec = HamiltonianSpec {
            source: path.display().to_string(),
            n_qubits: h.n_qubits(),
            coupling: None,
            field: None,
        };
        return Ok((h, spec));
    }
    if a.tfim {
        let n = a
            .qubits
            .or(default_qubits)
            .ok_or_else(|| usage("--tfim needs --qubits"))?;
        let h = tfim(n, a.coupling, a.field)?;
        let spec = HamiltonianSpec {
            source: "tfim".into(),
            n_qubits: n,
            coupling: Some(a.coupling),
            field: Some(a.field),
        };
        return Ok((h, spec));
    }
    Err(usage("specify --hamiltonian <file> or --tfim"))
}

fn check_qubits(genome: &CircuitGenome, h: &PauliHamiltonian) -> Result<(), CliError> {
    if genome.n_qubits() != h.n_qubits() {
        return Err(usage(format!(
            "qubit mismatch: circuit has {} qubits, Hamiltonian has {}",
            genome.n_qubits(),
            h.n_qubits()
        )));
    }
    Ok(())
}

fn reference_energy(h: &PauliHamiltonian) -> Result<f64, CliError> {
    match h.metadata.reference_ground_energy {
        Some(e) => Ok(e),
        None => Ok(ground_energy(h, 1e-8)?),
    }
}

// ---------------------------------------------------------------- vqe

#[derive(Debug, Serialize)]
struct VqeSummary {
    hamiltonian: HamiltonianSpec,
    init_mode: InitMode,
    final_energy: f64,
    reference_energy: Option<f64>,
    error_vs_reference: Option<f64>,
    iterations_used: usize,
    converged: bool,
    initial_energy: f64,
}

pub fn vqe(ctx: &Context, a: VqeArgs) -> Result<(), CliError> {
    let (file, genome) = circuit_file::load(&a.circuit)?;
    let (h, spec) = resolve_hamiltonian(&a.ham, Some(genome.n_qubits()))?;
    check_qubits(&genome, &h)?;
    let init_mode = match a.init.to_ascii_lowercase().as_str() {
        "stored" => InitMode::Stored,
        "random" => InitMode::Random,
        "zeros" => InitMode::Zeros,
        other => {
            return Err(usage(format!(
                "unknown --init {other:?} (stored|random|zeros)"
            )))
        }
    };
    if !a.tol.is_finite() || a.tol <= 0.0 {
        return Err(usage("--tol must be > 0"));
    }
    let seed = ctx.seed_or(None);
    let cfg = VqeConfig {
        max_iters: a.iters,
        learning_rate: a.lr,
        init_mode,
        seed,
        convergence_tol: a.tol,
        ..VqeConfig::default()
    };
    cfg.validate()?;

    let mut manifest = ManifestBuilder::new(&ctx.out_dir, "vqe", seed);
    manifest.config(&serde_json::json!({
        "circuit": a.circuit,
        "hamiltonian": &spec,
        "vqe": &cfg,
    }));
    let reference = reference_energy(&h)?;
    let trace = run_vqe_with_reference(&genome, &h, &cfg, Some(reference))?;

    let mut csv = Csv::new(&["iteration", "energy", "grad_norm"]);
    for (k, e) in trace.energies.iter().enumerate() {
        let g = trace
            .grad_norms
            .get(k)
            .map_or_else(String::new, |&g| fmt_f64(g));
        csv.row(&[k.to_string(), fmt_f64(*e), g]);
    }
    csv.write(&manifest.artifact("vqe_trace.csv"))?;

    let summary = VqeSummary {
        hamiltonian: spec,
        init_mode,
        final_energy: trace.final_energy,
        reference_energy: trace.reference_energy,
        error_vs_reference: trace.error_vs_reference,
        iterations_used: trace.iterations_used,
        converged: trace.converged,
        initial_energy: trace
            .energies
            .first()
            .copied()
            .unwrap_or(trace.final_energy),
    };
    write_json(&manifest.artifact("vqe_summary.json"), &summary)?;

    let optimised = genome.with_params(trace.final_params.clone())?;
    let provenance = Provenance {
        note: Some(format!(
            "VQE-optimised parameters ({} updates)",
            trace.iterations_used
        )),
        ..file.provenance.clone().unwrap_or(Provenance {
            seed,
            ..Provenance::default()
        })
    };
    circuit_file::save(
        &manifest.artifact("vqe_circuit.json"),
        &CircuitFile::from_genome(&optimised, Some(provenance)),
    )?;
    manifest.finish()?;
    Ok(())
}

// ---------------------------------------------------------------- landscape

fn parse_pair(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || usage(format!("--pair expects \"i,j\", got {s:?}"));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn landscape(ctx: &Context, a: LandscapeArgs) -> Result<(), CliError> {
    let (_, genome) = circuit_file::load(&a.circuit)?;
    let (h, spec) = resolve_hamiltonian(&a.ham, Some(genome.n_qubits()))?;
    check_qubits(&genome, &h)?;
    let pairs = a
        .pairs
        .iter()
        .map(|s| parse_pair(s))
        .collect::<Result<Vec<_>, _>>()?;
    let seed = ctx.seed_or(None);
    let mut manifest = ManifestBuilder::new(&ctx.out_dir, "landscape", seed);
    manifest.config(&serde_json::json!({
        "circuit": a.circuit,
        "hamiltonian": &spec,
        "pairs": &pairs,
        "resolution": a.resolution,
    }));

    let mut grids = Vec::new();
    for &(i, j) in &pairs {
        let grid = landscape_scan(&genome, &h, i, j, a.resolution, genome.params())?;
        let mut csv = Csv::new(&["theta_i", "theta_j", "energy"]);
        for (ra, row) in grid.energies.iter().enumerate() {
            for (cb, e) in row.iter().enumerate() {
                csv.row(&[fmt_f64(grid.axis[ra]), fmt_f64(grid.axis[cb]), fmt_f64(*e)]);
            }
        }
        let name = format!("landscape_{i}_{j}.csv");
        csv.write(&manifest.artifact(&name))?;
        let (min, max) = grid
            .energies
            .iter()
            .flatten()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| {
                (lo.min(e), hi.max(e))
            });
        grids.push(serde_json::json!({
            "param_i": i,
            "param_j": j,
            "resolution": grid.resolution(),
            "file": name,
            "min_energy": min,
            "max_energy": max,
        }));
    }
    write_json(
        &manifest.artifact("landscape_manifest.json"),
        &serde_json::json!({ "base_params": genome.params(), "grids": grids }),
    )?;
    manifest.finish()?;
    Ok(())
}

// ---------------------------------------------------------------- gradvar

pub fn gradvar(ctx: &Context, a: GradvarArgs) -> Result<(), CliError> {
    let (_, genome) = circuit_file::load(&a.circuit)?;
    let (h, spec) = resolve_hamiltonian(&a.ham, Some(genome.n_qubits()))?;
    check_qubits(&genome, &h)?;
    let seed = ctx.seed_or(None);
    let mut manifest = ManifestBuilder::new(&ctx.out_dir, "gradvar", seed);
    manifest.config(&serde_json::json!({
        "circuit": a.circuit,
        "hamiltonian": &spec,
        "samples": a.samples,
    }));
    let stats = gradient_variance(&genome, &h, a.samples, &mut rng_from_seed(seed))?;
    write_json(
        &manifest.artifact("gradvar.json"),
        &serde_json::json!({
            "num_params": genome.num_params(),
            "flat_fraction": stats.flat_fraction(),
            "stats": stats,
        }),
    )?;
    manifest.finish()?;
    Ok(())
}

// ---------------------------------------------------------------- ground

pub fn ground(ctx: &Context, a: GroundArgs) -> Result<(), CliError> {
    let (h, spec) = resolve_hamiltonian(&a.ham, None)?;
    if !a.tol.is_finite() || a.tol <= 0.0 {
        return Err(usage("--tol must be > 0"));
    }
    let seed = ctx.seed_or(None);
    let mut manifest = ManifestBuilder::new(&ctx.out_dir, "ground", seed);
    manifest.config(&serde_json::json!({ "hamiltonian": &spec, "tol": a.tol }));
    let energy = ground_energy(&h, a.tol)?;
    write_json(
        &manifest.artifact("ground.json"),
        &serde_json::json!({
            "hamiltonian": spec,
            "ground_energy": energy,
            "metadata_reference": h.metadata.reference_ground_energy,
        }),
    )?;
    manifest.finish()?;
    Ok(())
}

// ---------------------------------------------------------------- counts

pub fn counts(ctx: &Context, a: CountsArgs) -> Result<(), CliError> {
    let (_, genome) = circuit_file::load(&a.circuit)?;
    let seed = ctx.seed_or(None);
    let mut manifest = ManifestBuilder::new(&ctx.out_dir, "counts", seed);
    manifest.config(&serde_json::json!({ "circuit": a.circuit }));
    let c = gate_counts(&genome);
    write_json(
        &manifest.artifact("counts.json"),
        &serde_json::json!({
            "n_qubits": genome.n_qubits(),
            "depth": genome.depth(),
            "parameterized": c.parameterized,
            "non_parameterized": c.non_parameterized,
            "total": c.total,
        }),
    )?;
    manifest.finish()?;
    Ok(())
}
