//! Command-line driver: build, partition, evaluate, sweep-k, theorem1, verify.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::encodings::{encode_boson_operator, jordan_wigner};
use crate::error::{Error, Result};
use crate::operators::{
    build_bose_hubbard, build_fermi_hubbard, build_vibrational, Boundary, BosonOperator, FcidumpData,
    FermionOperator, Lattice, LatticeKind, VibrationalModel,
};
use crate::partition::{
    blocking_noclid, color_partition_bose_hubbard, color_partition_fermi_hubbard_1d, greedy_noclid,
    ordering_cost, qp_partition_vibrational, qpn_partition, reorder_indices, sorted_insertion, Partition,
    DEFAULT_HALT_AFTER,
};
use crate::pauli::{Commutation, PauliSum};
use crate::validate::{validate_partition, ValidationReport};
use crate::variance::{basis_state, lower_bound, pairwise_sum, partition_cost, random_state, theorem1_grid, theorem1_row, StateVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

/// Theorem-1 violations beyond this count as failures.
pub const THEOREM1_TOL: f64 = 1e-12;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Dimension { .. } | Error::Domain(_) | Error::Parse { .. } | Error::Data(_) | Error::Json(_) => EXIT_USAGE,
        Error::Constraint(_) => EXIT_VALIDATION,
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Io(_) => EXIT_IO,
    }
}

#[derive(Debug, Parser)]
#[command(name = "noclid", version, about = "Partition qubit Hamiltonians into locally diagonalizable fragments and score them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write PREFIX.pauli and PREFIX.json for a model Hamiltonian.
    Build(BuildArgs),
    /// Partition a Hamiltonian and validate the result.
    Partition(PartitionArgs),
    /// Exact eps^2 N of one or more partitions over seeded states.
    Evaluate(EvaluateArgs),
    /// eps^2 N as a function of the locality bound k.
    SweepK(SweepArgs),
    /// One-qubit rotated-basis versus Pauli-basis grid.
    Theorem1(Theorem1Args),
    /// Re-run validation on a partition file.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelClass {
    FermiHubbard,
    BoseHubbard,
    Vibrational,
    Electronic,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub class: ModelClass,
    /// Lattice kind (chain, square, hexagonal, triangular, cubic, tetrahedral, complete) or a lattice JSON file.
    #[arg(long, default_value = "chain")]
    pub lattice: String,
    /// Sites of a chain or complete graph.
    #[arg(long, visible_alias = "modes")]
    pub sites: Option<usize>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value = "open")]
    pub boundary: String,
    /// Levels kept per bosonic mode.
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long = "U", default_value_t = 2.0)]
    pub u: f64,
    /// Vibrational model JSON: {"omega": [...], "couplings": [{"modes": [...], "value": x}]}.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub fcidump: Option<PathBuf>,
    /// Reorder spin orbitals to shorten Jordan-Wigner strings (electronic only).
    #[arg(long)]
    pub reorder: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_HALT_AFTER)]
    pub halt_after: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    QwcSi,
    FcSi,
    Greedy,
    Blocking,
    Coloring,
    Fh1dColoring,
    Qpn,
    Qp,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    /// Pauli-sum file; model metadata is read from the sibling .json when a method needs it.
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub method: Method,
    #[arg(long)]
    pub k: Option<usize>,
    /// Random states for the fragment expectation check.
    #[arg(long, default_value_t = 10)]
    pub states: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(required = true)]
    pub partitions: Vec<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub states: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Single injected state: basis:<index> or haar:<seed>.
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMethod {
    Greedy,
    Blocking,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long, default_value = "greedy")]
    pub method: SweepMethod,
    #[arg(long, default_value_t = 1)]
    pub k_min: usize,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub states: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Theorem1Args {
    #[arg(long, default_value_t = 101)]
    pub resolution: usize,
    /// Append the two worked one-qubit points to the grid.
    #[arg(long)]
    pub with_anchors: bool,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Partition envelope, or a bare partition together with --hamiltonian.
    pub partition: PathBuf,
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub states: usize,
}

/// Enough to rebuild the operator behind a Pauli file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum ModelSpec {
    FermiHubbard {
        lattice: Lattice,
        t: f64,
        u: f64,
    },
    BoseHubbard {
        lattice: Lattice,
        t: f64,
        u: f64,
        d: usize,
    },
    Vibrational {
        model: VibrationalModel,
        d: usize,
    },
    Electronic {
        fcidump: String,
        /// Spin orbital `m` sits at position `permutation[m]`.
        permutation: Vec<usize>,
        ordering_cost: f64,
    },
}

impl ModelSpec {
    pub fn class(&self) -> &'static str {
        match self {
            ModelSpec::FermiHubbard { .. } => "fermi-hubbard",
            ModelSpec::BoseHubbard { .. } => "bose-hubbard",
            ModelSpec::Vibrational { .. } => "vibrational",
            ModelSpec::Electronic { .. } => "electronic",
        }
    }

    pub fn encoding(&self) -> &'static str {
        match self {
            ModelSpec::FermiHubbard { .. } | ModelSpec::Electronic { .. } => "jordan-wigner",
            ModelSpec::BoseHubbard { .. } | ModelSpec::Vibrational { .. } => "gray",
        }
    }

    pub fn fermion(&self) -> Result<Option<FermionOperator>> {
        Ok(match self {
            ModelSpec::FermiHubbard { lattice, t, u } => Some(build_fermi_hubbard(lattice, *t, *u)?),
            ModelSpec::Electronic { fcidump, permutation, .. } => {
                Some(FcidumpData::parse(fcidump)?.to_fermion_operator()?.permute_modes(permutation)?)
            }
            _ => None,
        })
    }

    pub fn boson(&self) -> Result<Option<BosonOperator>> {
        Ok(match self {
            ModelSpec::BoseHubbard { lattice, t, u, d } => Some(build_bose_hubbard(lattice, *t, *u, *d)?),
            ModelSpec::Vibrational { model, d } => Some(build_vibrational(&model.omega, &model.coupling_map(), *d)?),
            _ => None,
        })
    }

    pub fn pauli(&self) -> Result<PauliSum> {
        if let Some(f) = self.fermion()? {
            return jordan_wigner(&f);
        }
        let b = self.boson()?.expect("every class is fermionic or bosonic");
        Ok(encode_boson_operator(&b)?.pauli)
    }
}

/// Sidecar written next to every built Pauli file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianMeta {
    pub class: String,
    pub encoding: String,
    pub n_qubits: usize,
    pub terms: usize,
    pub model: ModelSpec,
}

impl HamiltonianMeta {
    pub fn new(model: ModelSpec, h: &PauliSum) -> Self {
        HamiltonianMeta {
            class: model.class().into(),
            encoding: model.encoding().into(),
            n_qubits: h.n(),
            terms: h.len(),
            model,
        }
    }
}

/// What `partition` writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionEnvelope {
    /// Pauli-sum text of the partitioned Hamiltonian.
    pub hamiltonian: String,
    pub partition: Partition,
    pub validation: ValidationReport,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

pub fn build_lattice(args: &BuildArgs) -> Result<Lattice> {
    if args.lattice.ends_with(".json") {
        return Lattice::from_json(&read(Path::new(&args.lattice))?);
    }
    let boundary = match args.boundary.as_str() {
        "open" => Boundary::Open,
        "periodic" => Boundary::Periodic,
        other => return Err(Error::Domain(format!("unknown boundary {other:?}"))),
    };
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::Domain(format!("--{name} is required for this lattice")));
    let w = || need(args.width.or(args.sites), "width");
    let h = || need(args.height.or(args.width).or(args.sites), "height");
    match args.lattice.to_ascii_lowercase().as_str() {
        "complete" | "all-to-all" => Lattice::complete(need(args.sites, "sites")?),
        kind => match kind.parse::<LatticeKind>()? {
            LatticeKind::Chain => Lattice::chain(need(args.sites, "sites")?, boundary),
            LatticeKind::Square => Lattice::square(w()?, h()?, boundary),
            LatticeKind::Hexagonal => Lattice::hexagonal(w()?, h()?),
            LatticeKind::Triangular => Lattice::triangular(w()?, h()?, boundary),
            LatticeKind::Cubic => Lattice::cubic(w()?, h()?, need(args.depth.or(args.height).or(args.width), "depth")?, boundary),
            LatticeKind::Tetrahedral => Lattice::tetrahedral(w()?),
            LatticeKind::Custom => Err(Error::domain("custom lattices are read from a JSON file")),
        },
    }
}

pub fn build_model(args: &BuildArgs) -> Result<ModelSpec> {
    Ok(match args.class {
        ModelClass::FermiHubbard => ModelSpec::FermiHubbard {
            lattice: build_lattice(args)?,
            t: args.t,
            u: args.u,
        },
        ModelClass::BoseHubbard => ModelSpec::BoseHubbard {
            lattice: build_lattice(args)?,
            t: args.t,
            u: args.u,
            d: args.d,
        },
        ModelClass::Vibrational => {
            let path = args.model.as_ref().ok_or_else(|| Error::domain("vibrational needs --model"))?;
            ModelSpec::Vibrational {
                model: VibrationalModel::from_json(&read(path)?)?,
                d: args.d,
            }
        }
        ModelClass::Electronic => {
            let path = args.fcidump.as_ref().ok_or_else(|| Error::domain("electronic needs --fcidump"))?;
            let text = read(path)?;
            let f = FcidumpData::parse(&text)?.to_fermion_operator()?;
            let (permutation, cost) = if args.reorder {
                reorder_indices(&f, args.seed, args.halt_after)?
            } else {
                let id: Vec<usize> = (0..f.modes).collect();
                let c = ordering_cost(&f, &id);
                (id, c)
            };
            ModelSpec::Electronic {
                fcidump: text,
                permutation,
                ordering_cost: cost,
            }
        }
    })
}

pub fn cmd_build(args: &BuildArgs) -> Result<(PathBuf, PathBuf)> {
    let model = build_model(args)?;
    let h = model.pauli()?;
    let meta = HamiltonianMeta::new(model, &h);
    let (pauli_path, meta_path) = (with_suffix(&args.out, ".pauli"), with_suffix(&args.out, ".json"));
    write(&pauli_path, &h.to_text())?;
    write(&meta_path, &(serde_json::to_string_pretty(&meta)? + "\n"))?;
    Ok((pauli_path, meta_path))
}

fn load_meta(hamiltonian: &Path) -> Result<Option<HamiltonianMeta>> {
    let path = hamiltonian.with_extension("json");
    if !path.exists() {
        return Ok(None);
    }
    Ok(Some(serde_json::from_str(&read(&path)?)?))
}

fn model_for(meta: &Option<HamiltonianMeta>, h: &PauliSum, method: Method) -> Result<ModelSpec> {
    let meta = meta
        .as_ref()
        .ok_or_else(|| Error::Domain(format!("{method:?} needs the model metadata written by build")))?;
    let rebuilt = meta.model.pauli()?;
    if rebuilt.n() != h.n() || rebuilt.max_abs_difference(h) > 1e-12 {
        return Err(Error::Data("model metadata does not reproduce the Pauli file".into()));
    }
    Ok(meta.model.clone())
}

/// Runs one partitioner on `h`; methods that need model structure take it from `meta`.
pub fn run_method(h: &PauliSum, meta: &Option<HamiltonianMeta>, method: Method, k: Option<usize>) -> Result<Partition> {
    let need_k = || k.ok_or_else(|| Error::Domain(format!("{method:?} needs --k")));
    let mismatch = |m: &ModelSpec| Error::Domain(format!("{method:?} does not apply to a {} model", m.class()));
    match method {
        Method::QwcSi => sorted_insertion(h, Commutation::Qubitwise),
        Method::FcSi => sorted_insertion(h, Commutation::Full),
        Method::Greedy => greedy_noclid(h, need_k()?),
        Method::Blocking => blocking_noclid(h, need_k()?),
        Method::Coloring | Method::Qpn => match model_for(meta, h, method)? {
            m @ ModelSpec::BoseHubbard { .. } => {
                let ModelSpec::BoseHubbard { lattice, .. } = &m else { unreachable!() };
                let b = m.boson()?.expect("bosonic");
                if method == Method::Coloring {
                    color_partition_bose_hubbard(&b, lattice)
                } else {
                    qpn_partition(&b, lattice)
                }
            }
            m => Err(mismatch(&m)),
        },
        Method::Fh1dColoring => match model_for(meta, h, method)? {
            m @ ModelSpec::FermiHubbard { .. } => {
                let ModelSpec::FermiHubbard { lattice, .. } = &m else { unreachable!() };
                if lattice.kind != LatticeKind::Chain || lattice.boundary != Boundary::Open {
                    return Err(Error::domain("fh1d-coloring needs an open chain"));
                }
                color_partition_fermi_hubbard_1d(&m.fermion()?.expect("fermionic"), lattice.sites)
            }
            m => Err(mismatch(&m)),
        },
        Method::Qp => match model_for(meta, h, method)? {
            m @ ModelSpec::Vibrational { .. } => qp_partition_vibrational(&m.boson()?.expect("bosonic")),
            m => Err(mismatch(&m)),
        },
    }
}

/// Locality bound to validate against: the method's own, else `n`.
fn bound_for(p: &Partition, k: Option<usize>) -> usize {
    k.or(p.source.k).unwrap_or(p.n_qubits)
}

pub fn cmd_partition(args: &PartitionArgs) -> Result<PartitionEnvelope> {
    let h = PauliSum::from_text(&read(&args.hamiltonian)?)?;
    let meta = load_meta(&args.hamiltonian)?;
    let p = run_method(&h, &meta, args.method, args.k)?;
    let validation = validate_partition(&p, &h, bound_for(&p, None), args.states)?;
    let env = PartitionEnvelope {
        hamiltonian: h.to_text(),
        partition: p,
        validation,
    };
    write(&args.out, &(serde_json::to_string_pretty(&env)? + "\n"))?;
    Ok(env)
}

pub fn load_envelope(path: &Path) -> Result<PartitionEnvelope> {
    Ok(serde_json::from_str(&read(path)?)?)
}

/// `basis:<i>` or `haar:<seed>`.
pub fn parse_state(text: &str, n: usize) -> Result<StateVector> {
    let bad = || Error::Domain(format!("state {text:?} is not basis:<index> or haar:<seed>"));
    let (kind, val) = text.split_once(':').ok_or_else(bad)?;
    let v: u64 = val.trim().parse().map_err(|_| bad())?;
    match kind {
        "basis" => basis_state(n, v as usize),
        "haar" => random_state(n, v),
        _ => Err(bad()),
    }
}

pub fn states_for(n: usize, count: usize, seed: u64, inject: Option<&str>) -> Result<Vec<StateVector>> {
    match inject {
        Some(text) => Ok(vec![parse_state(text, n)?]),
        None => (0..count as u64).map(|i| random_state(n, seed + i)).collect(),
    }
}

fn method_label(p: &Partition) -> String {
    match p.source.k {
        Some(k) if matches!(p.source.method.as_str(), "greedy" | "blocking") => format!("{}[k={k}]", p.source.method),
        _ => p.source.method.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRow {
    pub method: String,
    pub state: String,
    pub fragments: usize,
    pub total: f64,
    pub lower_bound: f64,
    pub per_fragment: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: String,
    pub fragments: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub mean_lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub rows: Vec<EvaluationRow>,
    pub summary: Vec<MethodSummary>,
}

pub const EVALUATE_HEADER: &str = "method,state,L,total,lower_bound,per_fragment";

impl Evaluation {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(EVALUATE_HEADER);
        s.push('\n');
        for r in &self.rows {
            let per: Vec<String> = r.per_fragment.iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(
                s,
                "{},{},{},{:.16e},{:.16e},{}",
                r.method,
                r.state,
                r.fragments,
                r.total,
                r.lower_bound,
                per.join(";")
            );
        }
        s
    }
}

fn summarize(method: String, fragments: usize, totals: &[f64], bounds: &[f64]) -> MethodSummary {
    let n = totals.len().max(1) as f64;
    let mean = pairwise_sum(totals) / n;
    let dev: Vec<f64> = totals.iter().map(|t| (t - mean).powi(2)).collect();
    MethodSummary {
        method,
        fragments,
        mean,
        std: (pairwise_sum(&dev) / n).sqrt(),
        min: totals.iter().copied().fold(f64::INFINITY, f64::min),
        max: totals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_lower_bound: pairwise_sum(bounds) / n,
    }
}

/// Scores every partition of `h` on every state.
pub fn evaluate(h: &PauliSum, parts: &[Partition], states: &[StateVector]) -> Result<Evaluation> {
    let bounds: Vec<f64> = states.iter().map(|s| lower_bound(h, s)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for p in parts {
        if p.n_qubits != h.n() {
            return Err(Error::Dimension {
                expected: h.n(),
                found: p.n_qubits,
            });
        }
        let mut totals = Vec::with_capacity(states.len());
        for (psi, &lb) in states.iter().zip(&bounds) {
            let rep = partition_cost(p, psi)?;
            totals.push(rep.total);
            rows.push(EvaluationRow {
                method: method_label(p),
                state: psi.label.clone(),
                fragments: rep.fragment_count,
                total: rep.total,
                lower_bound: lb,
                per_fragment: rep.per_fragment,
            });
        }
        summary.push(summarize(method_label(p), p.len(), &totals, &bounds));
    }
    Ok(Evaluation { rows, summary })
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<Evaluation> {
    let envs = args.partitions.iter().map(|p| load_envelope(p)).collect::<Result<Vec<_>>>()?;
    let h = PauliSum::from_text(&envs[0].hamiltonian)?;
    for (e, path) in envs.iter().zip(&args.partitions).skip(1) {
        let other = PauliSum::from_text(&e.hamiltonian)?;
        if other.n() != h.n() || other.max_abs_difference(&h) > 1e-12 {
            return Err(Error::Domain(format!(
                "{} partitions a different Hamiltonian than {}",
                path.display(),
                args.partitions[0].display()
            )));
        }
    }
    let states = states_for(h.n(), args.states, args.seed, args.state.as_deref())?;
    let parts: Vec<Partition> = envs.into_iter().map(|e| e.partition).collect();
    let ev = evaluate(&h, &parts, &states)?;
    match &args.csv {
        Some(path) => write(path, &ev.to_csv())?,
        None => print!("{}", ev.to_csv()),
    }
    if let Some(path) = &args.json {
        write(path, &(serde_json::to_string_pretty(&ev)? + "\n"))?;
    }
    for s in &ev.summary {
        eprintln!(
            "{}: L={} mean={:.6e} std={:.3e} lower_bound={:.6e}",
            s.method, s.fragments, s.mean, s.std, s.mean_lower_bound
        );
    }
    Ok(ev)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub fragments: usize,
    pub mean_var: f64,
    pub fc_si_var: f64,
    pub lower_bound: f64,
}

pub const SWEEP_HEADER: &str = "k,L,mean_var,fc_si_var,lower_bound";

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Smallest `k` whose mean is at most the FC-SI mean.
    pub k_star: Option<usize>,
}

impl Sweep {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(SWEEP_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{:.16e},{:.16e},{:.16e}",
                r.k, r.fragments, r.mean_var, r.fc_si_var, r.lower_bound
            );
        }
        s
    }
}

fn mean_total(p: &Partition, states: &[StateVector]) -> Result<f64> {
    let totals: Vec<f64> = states.iter().map(|s| partition_cost(p, s).map(|r| r.total)).collect::<Result<_>>()?;
    Ok(pairwise_sum(&totals) / states.len().max(1) as f64)
}

pub fn sweep_k(h: &PauliSum, method: SweepMethod, ks: std::ops::RangeInclusive<usize>, states: &[StateVector]) -> Result<Sweep> {
    let fc = mean_total(&sorted_insertion(h, Commutation::Full)?, states)?;
    let bounds: Vec<f64> = states.iter().map(|s| lower_bound(h, s)).collect::<Result<_>>()?;
    let lb = pairwise_sum(&bounds) / states.len().max(1) as f64;
    let mut rows = Vec::new();
    for k in ks {
        let p = match method {
            SweepMethod::Greedy => greedy_noclid(h, k)?,
            SweepMethod::Blocking => blocking_noclid(h, k)?,
        };
        rows.push(SweepRow {
            k,
            fragments: p.len(),
            mean_var: mean_total(&p, states)?,
            fc_si_var: fc,
            lower_bound: lb,
        });
    }
    let k_star = rows
        .iter()
        .find(|r| r.mean_var <= r.fc_si_var + 1e-10 * r.fc_si_var.abs().max(1.0))
        .map(|r| r.k);
    Ok(Sweep { rows, k_star })
}

pub fn cmd_sweep_k(args: &SweepArgs) -> Result<Sweep> {
    let h = PauliSum::from_text(&read(&args.hamiltonian)?)?;
    let k_max = args.k_max.unwrap_or(h.n());
    if args.k_min < 1 || k_max > h.n() || args.k_min > k_max {
        return Err(Error::Domain(format!(
            "k range {}..={k_max} must lie within 1..={}",
            args.k_min,
            h.n()
        )));
    }
    let states = states_for(h.n(), args.states, args.seed, None)?;
    let sweep = sweep_k(&h, args.method, args.k_min..=k_max, &states)?;
    match &args.csv {
        Some(path) => write(path, &sweep.to_csv())?,
        None => print!("{}", sweep.to_csv()),
    }
    match sweep.k_star {
        Some(k) => eprintln!("k* = {k}"),
        None => eprintln!("k* not reached in {}..={k_max}", args.k_min),
    }
    Ok(sweep)
}

pub const THEOREM1_HEADER: &str = "eta,alpha,n_gpb,n_rb";

pub fn cmd_theorem1(args: &Theorem1Args) -> Result<usize> {
    let mut rows = theorem1_grid(args.resolution)?;
    if args.with_anchors {
        let eta = std::f64::consts::FRAC_1_SQRT_2;
        rows.push(theorem1_row(eta, std::f64::consts::FRAC_PI_8.cos())?);
        rows.push(theorem1_row(eta, 1.0)?);
    }
    let mut s = String::from(THEOREM1_HEADER);
    s.push('\n');
    for r in &rows {
        let _ = writeln!(s, "{:.16e},{:.16e},{:.16e},{:.16e}", r.eta, r.alpha, r.n_gpb, r.n_rb);
    }
    match &args.csv {
        Some(path) => write(path, &s)?,
        None => print!("{s}"),
    }
    let violations = rows.iter().filter(|r| r.violates(THEOREM1_TOL)).count();
    eprintln!("{} rows, {violations} violations", rows.len());
    Ok(violations)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<ValidationReport> {
    let text = read(&args.partition)?;
    let (p, h) = match serde_json::from_str::<PartitionEnvelope>(&text) {
        Ok(env) => (env.partition, PauliSum::from_text(&env.hamiltonian)?),
        Err(_) => {
            let path = args
                .hamiltonian
                .as_ref()
                .ok_or_else(|| Error::domain("a bare partition needs --hamiltonian"))?;
            (Partition::from_json(&text)?, PauliSum::from_text(&read(path)?)?)
        }
    };
    let report = validate_partition(&p, &h, bound_for(&p, args.k), args.states)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(report)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Build(a) => cmd_build(a).map(|(p, m)| {
            eprintln!("wrote {} and {}", p.display(), m.display());
            EXIT_OK
        }),
        Command::Partition(a) => cmd_partition(a).map(|env| {
            let v = &env.validation;
            eprintln!(
                "{}: {} fragments, reconstruction {:.2e}, max width {}, commutator {:.2e}, residual {:.2e}",
                env.partition.source.method,
                env.partition.len(),
                v.reconstruction_error,
                v.locality.max_width,
                v.commutation.worst,
                v.diagonalization_residual
            );
            if v.passed {
                EXIT_OK
            } else {
                eprintln!("validation failed");
                EXIT_VALIDATION
            }
        }),
        Command::Evaluate(a) => cmd_evaluate(a).map(|_| EXIT_OK),
        Command::SweepK(a) => cmd_sweep_k(a).map(|_| EXIT_OK),
        Command::Theorem1(a) => cmd_theorem1(a).map(|v| if v == 0 { EXIT_OK } else { EXIT_VALIDATION }),
        Command::Verify(a) => cmd_verify(a).map(|r| if r.passed { EXIT_OK } else { EXIT_VALIDATION }),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code(&e)
    })
}
