//! `compseq`: construct and verify complementary sequence sets (CSS),
//! complete complementary codes (CCC), Butson-Hadamard matrices and seed
//! para-unitary products.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error, 3 I/O or parse error, 4 enumeration/expansion cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use compseq::algebra::{FieldConfig, Gf, GfPoly};
use compseq::autocorr::{check_eq17, two_level_violation, PeriodicSequence, TraceSpectrum};
use compseq::construct::{
    build_ccc, build_css, delta_quadratic, enumerate_pp_family, identity_table, rate_report,
    DeltaLinear, FunctionSpec, SequenceSet, SetRole, DEFAULT_FAMILY_CAP,
};
use compseq::hadamard::{
    bh_from_sequence, dft_matrix, field_hadamard, seed_pu_matrix, verify_bh, verify_pu, PhaseMatrix,
};
use compseq::permpoly::{enumerate_semi_normalized, is_permutation, PermPoly, DEFAULT_ENUM_CAP};
use compseq::verify::{min_hamming_distance, pmepr, verify_ccc, verify_css};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "compseq", version, about, disable_help_subcommand = true)]
struct Cli {
    /// JSON file mapping "p,n" to a primitive polynomial (little-endian
    /// coefficient list), overriding the shipped defaults.
    #[arg(long, global = true, env = "COMPSEQ_FIELD_CONFIG", value_name = "FILE")]
    field_config: Option<PathBuf>,

    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a CSS or CCC from a seed matrix, permutation polynomials and
    /// a linear part; the matching verifier runs before anything is
    /// written.
    Construct(ConstructArgs),
    /// Check the complementarity (css) or complete-complementarity (ccc)
    /// identities of a sequence-set file.
    Verify(VerifyArgs),
    /// Count the sequences of the prime-field chain family, optionally by
    /// exhaustive generation and deduplication.
    Enumerate(EnumerateArgs),
    /// PMEPR bound, subcarriers and rates of the prime-field family.
    Rates(RatesArgs),
    /// Peak-to-mean envelope power ratio of every sequence in a set file.
    Pmepr(PmeprArgs),
    /// Minimum pairwise Hamming distance of a sequence family file.
    Distance(DistanceArgs),
    /// 2-level autocorrelation checks on trace spectra.
    #[command(subcommand)]
    Autocorr(AutocorrCmd),
    /// Butson-Hadamard matrix checks.
    #[command(subcommand)]
    Bh(BhCmd),
    /// Para-unitarity of seed matrix chains.
    #[command(subcommand)]
    Pu(PuCmd),
    /// Permutation-polynomial enumeration.
    #[command(subcommand)]
    Pp(PpCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum RoleArg {
    Css,
    Ccc,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    role: RoleArg,
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// Modulus q; defaults to p^n for dft seeds, p for odd p, 2 for p = 2.
    #[arg(long)]
    q: Option<u32>,
    /// Seed matrix: "dft", "field", or "sequence:<file>" with a JSON
    /// {q, values} 2-level sequence.
    #[arg(long, default_value = "field")]
    seed_matrix: String,
    /// Left chain permutation polynomials, one per chain slot (m−1 of
    /// them; a single value is broadcast). Each is an index into the
    /// canonical semi-normalized set or a comma-separated coefficient
    /// list, lowest degree first.
    #[arg(long, value_name = "IDX|COEFFS", num_args = 0..)]
    pp_left: Vec<String>,
    /// Right chain permutation polynomials; same format as --pp-left.
    #[arg(long, value_name = "IDX|COEFFS", num_args = 0..)]
    pp_right: Vec<String>,
    /// Unit coefficients d_k, one per chain slot (default all 1).
    #[arg(long, value_delimiter = ',')]
    d: Vec<u32>,
    /// Boundary polynomial for the row offsets h_0(u, y_0).
    #[arg(long, value_name = "IDX|COEFFS")]
    bound_left: Option<String>,
    /// Boundary polynomial for the column offsets h_m(y_{m−1}, v).
    #[arg(long, value_name = "IDX|COEFFS")]
    bound_right: Option<String>,
    /// Linear part: the constant c′ followed by the m·(p^n−1) monomial
    /// coefficients, comma-separated (default all zero).
    #[arg(long, value_delimiter = ',')]
    linear: Vec<u32>,
    /// Variable permutation over the mn base-p symbols (default identity).
    #[arg(long, value_delimiter = ',')]
    perm: Vec<usize>,
    /// Skip verification before writing (the output may then be invalid).
    #[arg(long)]
    no_verify: bool,
    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    role: RoleArg,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    /// Generate and deduplicate every sequence (within the cap) instead
    /// of reporting only the closed form.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
    cap: u64,
    /// Write the deduplicated family to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RatesArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
}

#[derive(Args)]
struct PmeprArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 8)]
    oversample: u32,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum AutocorrCmd {
    /// Evaluate a trace spectrum and test the 2-level property exactly.
    Check(AutocorrArgs),
}

#[derive(Args)]
struct AutocorrArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    /// Comma-separated trace terms "r:beta" (exponent, coefficient code).
    #[arg(long)]
    spectrum: String,
}

#[derive(Subcommand)]
enum BhCmd {
    /// Exact row-orthogonality check of a phase-matrix file {q, N, phase}.
    Verify(BhArgs),
}

#[derive(Args)]
struct BhArgs {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum PuCmd {
    /// Expand a chain file {p, n, matrices: [...]} into its seed product
    /// and check para-unitarity symbolically.
    Check(PuArgs),
}

#[derive(Args)]
struct PuArgs {
    #[arg(long)]
    chain: PathBuf,
}

#[derive(Subcommand)]
enum PpCmd {
    /// Enumerate the semi-normalized permutation polynomials of GF(p^n).
    List(PpArgs),
}

#[derive(Args)]
struct PpArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u32,
}

/// Errors carrying their process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<compseq::Error> for Failure {
    fn from(e: compseq::Error) -> Failure {
        let code = match e {
            compseq::Error::CapExceeded { .. } | compseq::Error::TermBudget { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    let config = load_field_config(cli.field_config.as_deref())?;
    match &cli.command {
        Command::Construct(args) => cmd_construct(cli, config.as_ref(), args),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Enumerate(args) => cmd_enumerate(cli, args),
        Command::Rates(args) => cmd_rates(cli, args),
        Command::Pmepr(args) => cmd_pmepr(cli, args),
        Command::Distance(args) => cmd_distance(cli, args),
        Command::Autocorr(AutocorrCmd::Check(args)) => cmd_autocorr(cli, config.as_ref(), args),
        Command::Bh(BhCmd::Verify(args)) => cmd_bh(cli, args),
        Command::Pu(PuCmd::Check(args)) => cmd_pu(cli, args),
        Command::Pp(PpCmd::List(args)) => cmd_pp(cli, config.as_ref(), args),
    }
}

fn load_field_config(path: Option<&Path>) -> Result<Option<FieldConfig>, Failure> {
    match path {
        None => Ok(None),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::io(format!("cannot read {}: {e}", p.display())))?;
            Ok(Some(FieldConfig::from_json_str(&text)?))
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::io(format!("cannot parse {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Parse "idx" or "c0,c1,…" into a permutation polynomial of the field.
fn parse_pp(field: &Gf, cap: u32, s: &str) -> Result<PermPoly, Failure> {
    if s.contains(',') {
        let coeffs: Vec<u32> = s
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::usage(format!("bad coefficient list {s:?}")))?;
        let poly = GfPoly::new(coeffs);
        if !is_permutation(field, &poly) {
            return Err(Failure::usage(format!(
                "{s:?} is not a permutation polynomial of GF({}^{})",
                field.p(),
                field.n()
            )));
        }
        Ok(PermPoly::new(field, poly)?)
    } else {
        let idx: usize = s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad polynomial index {s:?}")))?;
        let set = enumerate_semi_normalized(field, cap)?;
        set.get(idx).cloned().ok_or_else(|| {
            Failure::usage(format!(
                "index {idx} out of range: the set has {} members",
                set.len()
            ))
        })
    }
}

fn broadcast(list: &[String], slots: usize, what: &str) -> Result<Vec<String>, Failure> {
    match list.len() {
        0 => Ok(vec!["0,1".to_string(); slots]),
        1 => Ok(vec![list[0].clone(); slots]),
        n if n == slots => Ok(list.to_vec()),
        n => Err(Failure::usage(format!(
            "{what}: expected {slots} entries (or 1 to broadcast), got {n}"
        ))),
    }
}

fn cmd_construct(_cli: &Cli, config: Option<&FieldConfig>, args: &ConstructArgs) -> CliResult {
    let field = Gf::with_config(args.p, args.n, config)?;
    let alphabet = field.size();
    let q = args.q.unwrap_or(match args.seed_matrix.as_str() {
        "dft" => alphabet,
        _ if args.p == 2 => 2,
        _ => args.p,
    });
    let seed = build_seed_matrix(&field, q, &args.seed_matrix)?;

    if args.m < 2 {
        return Err(Failure::usage("construction needs m ≥ 2"));
    }
    let slots = args.m as usize - 1;
    let left = broadcast(&args.pp_left, slots, "--pp-left")?;
    let right = broadcast(&args.pp_right, slots, "--pp-right")?;
    let d = match args.d.len() {
        0 => vec![1u32; slots],
        1 => vec![args.d[0]; slots],
        n if n == slots => args.d.clone(),
        n => {
            return Err(Failure::usage(format!(
                "--d: expected {slots} entries, got {n}"
            )))
        }
    };

    let mut chain = Vec::with_capacity(slots);
    for k in 0..slots {
        let gl = parse_pp(&field, DEFAULT_ENUM_CAP, &left[k])?;
        let gr = parse_pp(&field, DEFAULT_ENUM_CAP, &right[k])?;
        if d[k] == 0 || d[k] >= alphabet {
            return Err(Failure::usage(format!(
                "d_{} = {} is not a unit",
                k + 1,
                d[k]
            )));
        }
        let scaled: Vec<u32> = gl.table().iter().map(|&v| field.mul(d[k], v)).collect();
        chain.push(delta_quadratic(&seed, &scaled, gr.table())?);
    }

    let linear = parse_linear(&field, q, args.m, &args.linear)?;
    let nvars = (args.m * args.n) as usize;
    let perm = if args.perm.is_empty() {
        (0..nvars).collect()
    } else {
        args.perm.clone()
    };
    let spec = FunctionSpec::new(args.p, args.n, args.m, q, chain, linear, perm)?;

    let bound_left = match &args.bound_left {
        Some(s) => parse_pp(&field, DEFAULT_ENUM_CAP, s)?,
        None => PermPoly::identity(&field),
    };
    let bound_right = match &args.bound_right {
        Some(s) => parse_pp(&field, DEFAULT_ENUM_CAP, s)?,
        None => PermPoly::identity(&field),
    };
    let h0 = delta_quadratic(&seed, &identity_table(alphabet), bound_left.table())?;
    let set = match args.role {
        RoleArg::Css => build_css(&spec, &h0)?,
        RoleArg::Ccc => {
            let hm = delta_quadratic(&seed, bound_right.table(), &identity_table(alphabet))?;
            build_ccc(&spec, &h0, &hm)?
        }
    };

    if !args.no_verify {
        let pass = match set.role() {
            SetRole::Css => verify_css(&set)?.pass,
            SetRole::Ccc => verify_ccc(&set)?.pass,
        };
        if !pass {
            eprintln!("construction failed verification; nothing written");
            return Ok(EXIT_VERIFY);
        }
    }
    let text = serde_json::to_string(&set).map_err(|e| Failure::io(e.to_string()))?;
    emit(args.output.as_deref(), &text)?;
    Ok(0)
}

fn build_seed_matrix(field: &Gf, q: u32, spec: &str) -> Result<PhaseMatrix, Failure> {
    match spec {
        "dft" => Ok(dft_matrix(field.size() as usize, q)?),
        "field" => Ok(field_hadamard(field, q)?),
        other => match other.strip_prefix("sequence:") {
            Some(path) => {
                let s: PeriodicSequence = read_json(Path::new(path))?;
                let m = bh_from_sequence(&s)?;
                scale_phase(&m, q)
            }
            None => Err(Failure::usage(format!(
                "--seed-matrix must be dft, field or sequence:<file>, got {other:?}"
            ))),
        },
    }
}

/// Lift a phase matrix mod q0 to a divisor-compatible modulus q.
fn scale_phase(m: &PhaseMatrix, q: u32) -> Result<PhaseMatrix, Failure> {
    if m.q() == q {
        return Ok(m.clone());
    }
    if q % m.q() != 0 {
        return Err(Failure::usage(format!(
            "sequence modulus {} does not divide q = {q}",
            m.q()
        )));
    }
    let scale = q / m.q();
    let phase = m
        .rows()
        .iter()
        .map(|row| row.iter().map(|&v| v * scale).collect())
        .collect();
    Ok(PhaseMatrix::new(q, phase)?)
}

fn parse_linear(field: &Gf, q: u32, m: u32, flat: &[u32]) -> Result<DeltaLinear, Failure> {
    let per_block = field.size() as usize - 1;
    if flat.is_empty() {
        return Ok(DeltaLinear::zero(q, field.size(), m));
    }
    let want = 1 + m as usize * per_block;
    if flat.len() != want {
        return Err(Failure::usage(format!(
            "--linear: expected {want} values (c' then {m}·{per_block} monomial coefficients), got {}",
            flat.len()
        )));
    }
    let coeffs: Vec<Vec<u32>> = flat[1..].chunks(per_block).map(|c| c.to_vec()).collect();
    Ok(DeltaLinear::from_monomials(
        field.p(),
        field.n(),
        m,
        q,
        &coeffs,
        flat[0],
    )?)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> CliResult {
    let set: SequenceSet = read_json(&args.input)?;
    let (pass, report) = match args.role {
        RoleArg::Css => {
            let r = verify_css(&set)?;
            (r.pass, serde_json::to_value(&r))
        }
        RoleArg::Ccc => {
            let r = verify_ccc(&set)?;
            (r.pass, serde_json::to_value(&r))
        }
    };
    let report = report.map_err(|e| Failure::io(e.to_string()))?;
    if cli.json {
        println!("{report}");
    } else if pass {
        println!("pass");
    } else {
        println!("FAIL: {report}");
    }
    Ok(if pass { 0 } else { EXIT_VERIFY })
}

fn cmd_enumerate(cli: &Cli, args: &EnumerateArgs) -> CliResult {
    let cap = if args.exhaustive { args.cap } else { 0 };
    let fam = enumerate_pp_family(args.p, args.m, cap)?;
    if cli.json {
        println!(
            "{}",
            serde_json::json!({
                "p": args.p,
                "m": args.m,
                "closed_form": fam.closed_form.to_string(),
                "distinct": fam.distinct(),
                "exhaustive": fam.exhaustive(),
            })
        );
    } else {
        println!("{}", fam.closed_form);
        if let Some(d) = fam.distinct() {
            println!("exhaustive dedup: {d}");
        } else if args.exhaustive {
            println!(
                "not exhaustively verified (closed form exceeds cap {})",
                args.cap
            );
        }
    }
    if let (Some(path), Some(seqs)) = (&args.output, &fam.sequences) {
        let text = serde_json::to_string(&serde_json::json!({
            "p": args.p,
            "m": args.m,
            "count": seqs.len(),
            "sequences": seqs,
        }))
        .map_err(|e| Failure::io(e.to_string()))?;
        emit(Some(path), &text)?;
    }
    Ok(0)
}

fn cmd_rates(cli: &Cli, args: &RatesArgs) -> CliResult {
    let r = rate_report(args.p, args.m)?;
    if cli.json {
        println!(
            "{}",
            serde_json::json!({
                "pmepr_bound": r.pmepr_bound,
                "subcarriers": r.subcarriers,
                "info_rate": (r.info_rate * 1000.0).round() / 1000.0,
                "code_rate": (r.code_rate * 1000.0).round() / 1000.0,
            })
        );
    } else {
        println!("PMEPR at most:  {}", r.pmepr_bound);
        println!("subcarriers:    {}", r.subcarriers);
        println!("info rate:      {:.3}", r.info_rate);
        println!("code rate:      {:.3}", r.code_rate);
    }
    Ok(0)
}

fn cmd_pmepr(cli: &Cli, args: &PmeprArgs) -> CliResult {
    let set: SequenceSet = read_json(&args.input)?;
    let mut worst = 0.0f64;
    let mut values = Vec::with_capacity(set.sequences().len());
    for s in set.sequences() {
        let v = pmepr(s, set.q(), args.oversample)?;
        worst = worst.max(v);
        values.push(v);
    }
    if cli.json {
        println!(
            "{}",
            serde_json::json!({"max": worst, "oversample": args.oversample, "per_sequence": values})
        );
    } else {
        println!("max PMEPR: {worst:.6} (oversample {})", args.oversample);
    }
    Ok(0)
}

fn cmd_distance(cli: &Cli, args: &DistanceArgs) -> CliResult {
    let value: serde_json::Value = read_json(&args.input)?;
    let seqs = value
        .get("sequences")
        .and_then(|s| s.as_array())
        .ok_or_else(|| Failure::io("input has no \"sequences\" array"))?;
    let family: Vec<Vec<u32>> = seqs
        .iter()
        .map(|row| {
            row.as_array()
                .map(|r| {
                    r.iter()
                        .filter_map(|v| v.as_u64().map(|v| v as u32))
                        .collect()
                })
                .ok_or_else(|| Failure::io("sequences must be arrays of integers"))
        })
        .collect::<Result<_, _>>()?;
    let min = min_hamming_distance(&family)?;
    if cli.json {
        println!(
            "{}",
            serde_json::json!({"min_distance": min, "family": family.len()})
        );
    } else {
        println!("minimum pairwise Hamming distance: {min}");
    }
    Ok(0)
}

fn cmd_autocorr(cli: &Cli, config: Option<&FieldConfig>, args: &AutocorrArgs) -> CliResult {
    let field = Gf::with_config(args.p, args.n, config)?;
    let mut terms = Vec::new();
    for part in args.spectrum.split(',') {
        let (r, beta) = part
            .split_once(':')
            .ok_or_else(|| Failure::usage(format!("bad spectrum term {part:?}, want r:beta")))?;
        let r: u64 = r
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad exponent in {part:?}")))?;
        let beta: u32 = beta
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad coefficient in {part:?}")))?;
        terms.push((r, beta));
    }
    let spectrum = TraceSpectrum::new(field, terms)?;
    let sequence = spectrum.evaluate();
    let violation = two_level_violation(&sequence);
    let eq = check_eq17(&spectrum);
    if cli.json {
        println!(
            "{}",
            serde_json::json!({
                "two_level": violation.is_none(),
                "failing_shift": violation,
                "balance_condition": eq,
                "period": sequence.len(),
            })
        );
    } else {
        match violation {
            None => println!("pass: 2-level over period {}", sequence.len()),
            Some(shift) => println!("FAIL: autocorrelation differs from −1 at shift {shift}"),
        }
    }
    Ok(if violation.is_none() { 0 } else { EXIT_VERIFY })
}

fn cmd_bh(cli: &Cli, args: &BhArgs) -> CliResult {
    let matrix: PhaseMatrix = read_json(&args.input)?;
    let report = verify_bh(&matrix);
    if cli.json {
        println!(
            "{}",
            serde_json::to_value(&report).map_err(|e| Failure::io(e.to_string()))?
        );
    } else if report.pass {
        println!(
            "pass: Butson-Hadamard of order {} mod {}",
            matrix.order(),
            matrix.q()
        );
    } else {
        let (a, b) = report.witness.unwrap();
        println!("FAIL: rows {a} and {b} are not orthogonal");
    }
    Ok(if report.pass { 0 } else { EXIT_VERIFY })
}

fn cmd_pu(cli: &Cli, args: &PuArgs) -> CliResult {
    let value: serde_json::Value = read_json(&args.chain)?;
    let p = value
        .get("p")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Failure::io("chain file needs integer field \"p\""))? as u32;
    let n = value
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Failure::io("chain file needs integer field \"n\""))? as u32;
    let matrices: Vec<PhaseMatrix> = value
        .get("matrices")
        .cloned()
        .map(serde_json::from_value)
        .transpose()
        .map_err(|e| Failure::io(format!("bad matrices array: {e}")))?
        .ok_or_else(|| Failure::io("chain file needs \"matrices\""))?;
    let seed = seed_pu_matrix(&matrices, p, n)?;
    let report = verify_pu(&seed)?;
    if cli.json {
        println!(
            "{}",
            serde_json::to_value(&report).map_err(|e| Failure::io(e.to_string()))?
        );
    } else if report.pass {
        println!(
            "pass: para-unitary with constant {}",
            report.constant.unwrap()
        );
    } else {
        let (u, v) = report.witness.unwrap();
        println!("FAIL: product entry ({u},{v}) breaks c·I");
    }
    Ok(if report.pass { 0 } else { EXIT_VERIFY })
}

fn cmd_pp(cli: &Cli, config: Option<&FieldConfig>, args: &PpArgs) -> CliResult {
    let field = Gf::with_config(args.p, args.n, config)?;
    let set = enumerate_semi_normalized(&field, args.cap)?;
    let coeffs: Vec<&[u32]> = set.iter().map(|g| g.poly().coeffs()).collect();
    if cli.json {
        println!(
            "{}",
            serde_json::json!({"p": args.p, "n": args.n, "count": coeffs.len(), "polynomials": coeffs})
        );
    } else {
        for c in &coeffs {
            println!("{}", serde_json::to_string(c).unwrap());
        }
    }
    Ok(0)
}
