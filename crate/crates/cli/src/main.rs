//! `aqs`: batch front end for the affine-schur library.
//!
//! Inputs are JSON, read from `--input` or stdin. Exit codes: 0 on success,
//! 1 if a verification check fails, 2 on malformed input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use affine_schur::hecke::KlTable;
use affine_schur::quantum::duality::Duality;
use affine_schur::quantum::{act_tensor, TensorVector, UElement, Word};
use affine_schur::report::Report;
use affine_schur::schur::{phi_value, theta, SchurElement, Weight};
use affine_schur::verify::{run_suite, Suite, SuiteOptions};
use affine_schur::weyl::{coset_decompose, ParabolicIndex};
use affine_schur::{HeckeElement, LaurentPoly, WindowPerm};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "aqs", version, about = "Exact computations in affine Hecke and q-Schur algebras")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Length bound (suite-specific meaning).
    #[arg(long, alias = "len-bound", global = true)]
    len: Option<usize>,
    /// Tensor indices range over -window..=window.
    #[arg(long, global = true, allow_negative_numbers = true)]
    window: Option<i64>,
    #[arg(long = "rho-bound", global = true)]
    rho_bound: Option<i64>,
    /// Number of random samples (suite-specific meaning).
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// JSON input; read from stdin when absent.
    #[arg(long, global = true)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// The extended affine Weyl group.
    #[command(subcommand)]
    Weyl(WeylOp),
    /// The affine Hecke algebra.
    #[command(subcommand)]
    Hecke(HeckeOp),
    /// The affine q-Schur algebra.
    #[command(subcommand)]
    Schur(SchurOp),
    /// U(gl_n-hat) and tensor space.
    #[command(subcommand)]
    Quantum(QuantumOp),
    /// Run a verification suite: weyl-core, hecke-core, kl, schur-core, hopf, duality or all.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum WeylOp {
    /// Length of {"r":3,"window":[...]}.
    Length,
    /// Reduced word rho^z s_i1 ... s_im.
    Word,
    /// Product of a JSON array of elements, first factor applied first.
    Compose,
    /// {"w": element, "pi": [i, ...]} -> w = w_pi . d with d distinguished.
    Coset,
}

#[derive(Subcommand)]
enum HeckeOp {
    /// Product of a JSON array of elements.
    Mul,
    /// {"r": 3, "pi": [i, ...], "shift": 0} -> sum of T_w over the parabolic subgroup.
    Xlambda,
    /// {"y": element, "w": element} -> P_{y,w}, zero across rho-powers.
    Kl,
}

#[derive(Subcommand)]
enum SchurOp {
    /// Product (composition) of a JSON array of elements.
    Mul,
    /// {"n","r","lambda","mu","d"} -> phi^d_{lambda,mu} and its value on x_mu.
    Phi,
    /// {"n","r","lambda","mu","d"} -> theta^d_{lambda,mu} in the phi basis.
    ///
    /// Computed as v^l(w_0,mu) sum_z v^-l(d+) P_{z+,d+} phi^z_{lambda,mu}, the sum
    /// running over distinguished z with z+ <= d+. The coefficient index is
    /// read as (z, d): the printed definition leaves its second index free.
    Theta,
    /// Run the schur-core suite.
    Verify,
}

#[derive(Subcommand)]
enum QuantumOp {
    /// {"n": 3, "word": "E1*F2" | "terms": [{"word","coeff"}], "vector": tensor} -> u . vector.
    Act,
    /// {"n","r","w": element, "vector"?: tensor} -> tau(T_w) applied to vector (default e_omega).
    Tau,
    /// {"element": schur element, "vector": tensor} -> kappa(element) applied to vector.
    Kappa,
    /// Run the hopf suite.
    VerifyHopf,
    /// Run the duality suite; notes report the observed normalization exponents.
    VerifyDuality,
}

enum Failure {
    Input(String),
    Checks,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Out = Result<(), Failure>;

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

fn run(argv: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Input(msg)) => {
            eprintln!("error: invariant violation: {msg}");
            2
        }
    }
}

fn read_input(opts: &Opts) -> Result<Value, Failure> {
    let text = match &opts.input {
        Some(s) => s.clone(),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, Failure> {
    Ok(serde_json::from_value(v)?)
}

fn field<T: for<'de> Deserialize<'de>>(v: &Value, key: &str) -> Result<T, Failure> {
    let x = v.get(key).ok_or_else(|| Failure::Input(format!("missing field {key:?}")))?;
    parse(x.clone())
}

fn emit(opts: &Opts, value: Value, text: impl FnOnce() -> String) {
    let body = if opts.json { serde_json::to_string_pretty(&value).expect("serializable") } else { text() };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn dispatch(cli: &Cli) -> Out {
    let o = &cli.opts;
    match &cli.cmd {
        Cmd::Weyl(op) => weyl(o, op),
        Cmd::Hecke(op) => hecke(o, op),
        Cmd::Schur(SchurOp::Verify) => verify(o, Suite::SchurCore),
        Cmd::Schur(op) => schur(o, op),
        Cmd::Quantum(QuantumOp::VerifyHopf) => verify(o, Suite::Hopf),
        Cmd::Quantum(QuantumOp::VerifyDuality) => verify(o, Suite::Duality),
        Cmd::Quantum(op) => quantum(o, op),
        Cmd::Verify { suite } => verify(o, suite.parse()?),
    }
}

fn weyl(o: &Opts, op: &WeylOp) -> Out {
    let input = read_input(o)?;
    match op {
        WeylOp::Length => {
            let w: WindowPerm = parse(input)?;
            let l = w.length();
            emit(o, json!({ "length": l, "rho_power": w.rho_power() }), || l.to_string());
        }
        WeylOp::Word => {
            let w: WindowPerm = parse(input)?;
            let (z, word) = w.reduced_word();
            emit(o, json!({ "rho_power": z, "word": word }), || {
                let mut s = format!("rho^{z}");
                for i in &word {
                    s.push_str(&format!(" s{i}"));
                }
                s
            });
        }
        WeylOp::Compose => {
            let ws: Vec<WindowPerm> = parse(input)?;
            let (first, rest) = ws.split_first().ok_or_else(|| Failure::Input("empty product".into()))?;
            let mut acc = first.clone();
            for w in rest {
                acc = acc.compose(w)?;
            }
            emit(o, serde_json::to_value(&acc)?, || acc.to_string());
        }
        WeylOp::Coset => {
            let w: WindowPerm = field(&input, "w")?;
            let members: Vec<usize> = field(&input, "pi")?;
            let pi = ParabolicIndex::new(w.r(), members, 0)?;
            let (a, d) = coset_decompose(&w, &pi);
            emit(
                o,
                json!({ "w_pi": a, "d": d, "lengths": [a.length(), d.length()] }),
                || format!("{a} . {d}"),
            );
        }
    }
    Ok(())
}

fn hecke(o: &Opts, op: &HeckeOp) -> Out {
    let input = read_input(o)?;
    match op {
        HeckeOp::Mul => {
            let hs: Vec<HeckeElement> = parse(input)?;
            let (first, rest) = hs.split_first().ok_or_else(|| Failure::Input("empty product".into()))?;
            let mut acc = first.clone();
            for h in rest {
                acc = acc.mul(h)?;
            }
            emit(o, serde_json::to_value(&acc)?, || acc.to_string());
        }
        HeckeOp::Xlambda => {
            let r: usize = field(&input, "r")?;
            let members: Vec<usize> = field(&input, "pi")?;
            let shift: i64 = input.get("shift").map(|s| parse(s.clone())).transpose()?.unwrap_or(0);
            let x = HeckeElement::x_lambda(&ParabolicIndex::new(r, members, shift)?);
            emit(o, serde_json::to_value(&x)?, || x.to_string());
        }
        HeckeOp::Kl => {
            let y: WindowPerm = field(&input, "y")?;
            let w: WindowPerm = field(&input, "w")?;
            let p = KlTable::new().kl_extended(&y, &w)?;
            emit(o, json!({ "p": p }), || p.to_string());
        }
    }
    Ok(())
}

fn schur_key(input: &Value) -> Result<(Weight, Weight, WindowPerm), Failure> {
    let n: usize = field(input, "n")?;
    let r: usize = field(input, "r")?;
    let lambda = Weight::with_shape(field(input, "lambda")?, n, r)?;
    let mu = Weight::with_shape(field(input, "mu")?, n, r)?;
    let d_json: Value = field(input, "d")?;
    let window: Vec<i64> = field(&d_json, "window")?;
    if window.len() != r {
        return Err(Failure::Input(format!("window {window:?} does not have length {r}")));
    }
    Ok((lambda, mu, WindowPerm::new(window)?))
}

fn schur(o: &Opts, op: &SchurOp) -> Out {
    let input = read_input(o)?;
    match op {
        SchurOp::Mul => {
            let xs: Vec<SchurElement> = parse(input)?;
            let (first, rest) = xs.split_first().ok_or_else(|| Failure::Input("empty product".into()))?;
            let mut acc = first.clone();
            for x in rest {
                acc = acc.mul(x)?;
            }
            emit(o, serde_json::to_value(&acc)?, || acc.to_string());
        }
        SchurOp::Phi => {
            let (lambda, mu, d) = schur_key(&input)?;
            let phi = SchurElement::phi(&lambda, &mu, &d)?;
            let d = phi.terms().keys().next().expect("basis element").d.clone();
            let value = phi_value(&lambda, &mu, &d)?;
            emit(o, json!({ "element": phi, "value": value }), || format!("{phi}\nx_mu -> {value}"));
        }
        SchurOp::Theta => {
            let (lambda, mu, d) = schur_key(&input)?;
            let t = theta(&lambda, &mu, &d, &KlTable::new())?;
            emit(o, serde_json::to_value(&t)?, || t.to_string());
        }
        SchurOp::Verify => unreachable!("dispatched as a suite"),
    }
    Ok(())
}

#[derive(Deserialize)]
struct UTermJson {
    word: String,
    coeff: LaurentPoly,
}

fn u_element(input: &Value) -> Result<UElement, Failure> {
    let n: usize = field(input, "n")?;
    let terms: Vec<(Word, LaurentPoly)> = if let Some(w) = input.get("word") {
        let w: String = parse(w.clone())?;
        vec![(w.parse()?, LaurentPoly::one())]
    } else {
        let ts: Vec<UTermJson> = field(input, "terms")?;
        ts.into_iter().map(|t| Ok((t.word.parse()?, t.coeff))).collect::<Result<_, Failure>>()?
    };
    Ok(UElement::from_terms(n, terms)?)
}

fn quantum(o: &Opts, op: &QuantumOp) -> Out {
    let input = read_input(o)?;
    let out = match op {
        QuantumOp::Act => {
            let u = u_element(&input)?;
            let x: TensorVector = field(&input, "vector")?;
            act_tensor(&u, &x)?
        }
        QuantumOp::Tau => {
            let n: usize = field(&input, "n")?;
            let r: usize = field(&input, "r")?;
            let w: WindowPerm = field(&input, "w")?;
            let d = Duality::new(n, r)?;
            let x = match input.get("vector") {
                Some(v) => parse(v.clone())?,
                None => d.e_omega(),
            };
            let u = d.tau_word(&w)?;
            let y = d.tau_t(&w)?.apply(&x)?;
            emit(o, json!({ "u": u.to_string(), "vector": y }), || format!("tau(T_{w}) = {u}\n{y}"));
            return Ok(());
        }
        QuantumOp::Kappa => {
            let s: SchurElement = field(&input, "element")?;
            let x: TensorVector = field(&input, "vector")?;
            let d = Arc::new(Duality::new(s.n(), s.r())?);
            d.kappa(&s)?.apply(&x)?
        }
        QuantumOp::VerifyHopf | QuantumOp::VerifyDuality => unreachable!("dispatched as a suite"),
    };
    emit(o, serde_json::to_value(&out)?, || out.to_string());
    Ok(())
}

fn verify(o: &Opts, suite: Suite) -> Out {
    let opts = SuiteOptions {
        n: o.n,
        r: o.r,
        len: o.len,
        window: o.window,
        rho_bound: o.rho_bound,
        samples: o.samples,
        seed: o.seed,
    };
    let start = Instant::now();
    let reports: Vec<Report> = run_suite(suite, &opts)?.into_iter().map(Report::sorted).collect();
    let passed = reports.iter().all(|r| r.passed);
    emit(o, json!({ "suite": suite.to_string(), "passed": passed, "reports": reports }), || {
        reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
    });
    eprintln!("{suite}: {} in {:.2?}", if passed { "PASS" } else { "FAIL" }, start.elapsed());
    if passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}
