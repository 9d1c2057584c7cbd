//! Text formats and the batch command front end: polynomial expressions,
//! triangular-set files, the `gcd`/`mul`/`inv`/`radical-test`/`bench`
//! commands, and the seeded benchmark input generator.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cgcd::{modular_cgcd, CGcdOptions, CGcdResult, RunStats};
use crate::modp::{is_radical_prime, RadicalOutcome};
use crate::oracle::{inv_q, InvQOutcome};
use crate::ring::{
    self, mul_cost_bound, mul_mod, reduce, with_mul_count, Coeff, MulCostModel, RPoly,
    TriangularSet,
};
use crate::Error;

// ---------------------------------------------------------------------------
// variable naming
// ---------------------------------------------------------------------------

/// Variable names for parsing and printing: `zvars[i]` names level `i+1`,
/// `main` names the free variable one level above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    pub zvars: Vec<String>,
    pub main: String,
}

impl VarNames {
    pub fn new(zvars: &[&str], main: &str) -> VarNames {
        VarNames {
            zvars: zvars.iter().map(|s| s.to_string()).collect(),
            main: main.into(),
        }
    }

    /// `z1, ..., zn` with main variable `x`.
    pub fn standard(n: usize) -> VarNames {
        VarNames {
            zvars: (1..=n).map(|i| format!("z{i}")).collect(),
            main: "x".into(),
        }
    }

    fn level_of(&self, ident: &str) -> Option<usize> {
        if ident == self.main {
            return Some(self.zvars.len() + 1);
        }
        self.zvars.iter().position(|v| v == ident).map(|i| i + 1)
    }

    fn name_of(&self, level: usize) -> &str {
        if level == self.zvars.len() + 1 {
            &self.main
        } else {
            &self.zvars[level - 1]
        }
    }
}

// ---------------------------------------------------------------------------
// expression parser
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    toks: Vec<(usize, Tok)>,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let mut lx = Lexer {
        src: src.as_bytes(),
        pos: 0,
        toks: Vec::new(),
    };
    while lx.pos < lx.src.len() {
        let c = lx.src[lx.pos];
        let at = lx.pos;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => lx.pos += 1,
            b'+' => {
                lx.toks.push((at, Tok::Plus));
                lx.pos += 1;
            }
            b'-' => {
                lx.toks.push((at, Tok::Minus));
                lx.pos += 1;
            }
            b'*' => {
                lx.toks.push((at, Tok::Star));
                lx.pos += 1;
            }
            b'^' => {
                lx.toks.push((at, Tok::Caret));
                lx.pos += 1;
            }
            b'/' => {
                lx.toks.push((at, Tok::Slash));
                lx.pos += 1;
            }
            b'(' => {
                lx.toks.push((at, Tok::LParen));
                lx.pos += 1;
            }
            b')' => {
                lx.toks.push((at, Tok::RParen));
                lx.pos += 1;
            }
            b'0'..=b'9' => {
                let start = lx.pos;
                while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                    lx.pos += 1;
                }
                let text = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                lx.toks.push((at, Tok::Num(text.parse().unwrap())));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = lx.pos;
                while lx.pos < lx.src.len()
                    && (lx.src[lx.pos].is_ascii_alphanumeric() || lx.src[lx.pos] == b'_')
                {
                    lx.pos += 1;
                }
                let text = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                lx.toks.push((at, Tok::Ident(text.into())));
            }
            other => {
                return Err(Error::Parse {
                    position: at,
                    message: format!("unexpected character {:?}", other as char),
                })
            }
        }
    }
    Ok(lx.toks)
}

struct ExprParser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    names: &'a VarNames,
    end: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(at, _)| *at)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, Error> {
        Err(Error::Parse {
            position: self.here(),
            message: message.into(),
        })
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<RPoly, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = ring::add(&acc, &rhs);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = ring::sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<RPoly, Error> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = ring::mul_raw(&acc, &rhs);
        }
        Ok(acc)
    }

    // factor := '-' factor | atom ('^' uint)?
    fn factor(&mut self) -> Result<RPoly, Error> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(ring::neg(&f));
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let e = match self.bump() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.err("expected a nonnegative integer exponent after '^'"),
            };
            if e.is_negative() {
                return self.err("exponents must be nonnegative");
            }
            let e: u64 = e
                .to_string()
                .parse()
                .ok()
                .filter(|e| *e <= 65_535)
                .ok_or_else(|| Error::Parse {
                    position: self.here(),
                    message: "exponent too large".into(),
                })?;
            let mut acc = base.field_one();
            for _ in 0..e {
                acc = ring::mul_raw(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    // atom := rational | ident | '(' expr ')'
    // A '/' is only valid between two integer literals.
    fn atom(&mut self) -> Result<RPoly, Error> {
        let at = self.here();
        match self.bump().cloned() {
            Some(Tok::Num(n)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.pos += 1;
                    match self.bump().cloned() {
                        Some(Tok::Num(d)) => {
                            if d == BigInt::from(0) {
                                return Err(Error::Parse {
                                    position: at,
                                    message: "zero denominator".into(),
                                });
                            }
                            Ok(RPoly::constant(Coeff::Rat(BigRational::new(n, d))))
                        }
                        _ => self.err("'/' is only allowed between integer literals"),
                    }
                } else {
                    Ok(RPoly::constant(Coeff::Rat(BigRational::from_integer(n))))
                }
            }
            Some(Tok::Ident(name)) => match self.names.level_of(&name) {
                Some(level) => Ok(RPoly::var(level, &Coeff::from_int(0))),
                None => Err(Error::Parse {
                    position: at,
                    message: format!("unknown variable '{name}'"),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => {
                        if matches!(self.peek(), Some(Tok::Slash)) {
                            return self.err("'/' is only allowed between integer literals");
                        }
                        Ok(inner)
                    }
                    _ => Err(Error::Parse {
                        position: at,
                        message: "unclosed '('".into(),
                    }),
                }
            }
            _ => Err(Error::Parse {
                position: at,
                message: "expected a term".into(),
            }),
        }
    }
}

/// Parses an expression over `Q` in the given variables. The grammar
/// accepts integers, rational literals `a/b`, `+ - * ^` and parentheses;
/// multiplication is always explicit.
pub fn parse_poly(src: &str, names: &VarNames) -> Result<RPoly, Error> {
    let toks = lex(src)?;
    let mut p = ExprParser {
        toks: &toks,
        pos: 0,
        names,
        end: src.len(),
    };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return p.err("trailing input");
    }
    Ok(poly)
}

// ---------------------------------------------------------------------------
// canonical printing
// ---------------------------------------------------------------------------

fn coeff_string(c: &Coeff) -> String {
    match c {
        Coeff::Rat(r) => {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        Coeff::Mod { val, .. } => val.to_string(),
    }
}

/// Canonical text form: terms in descending degree at every level, with the
/// lowest variable innermost; parentheses around every non-constant
/// coefficient. `parse_poly(format_poly(f)) == f` for all reduced `f`.
pub fn format_poly(f: &RPoly, names: &VarNames) -> String {
    match f {
        RPoly::Const(c) => coeff_string(c),
        RPoly::Poly { level, coeffs } => {
            let var = names.name_of(*level);
            let mut out = String::new();
            for (k, c) in coeffs.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let power = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                let piece = match c {
                    _ if k == 0 => format_poly(c, names),
                    RPoly::Const(cc) => {
                        if cc.is_one() {
                            power.clone()
                        } else if matches!(cc, Coeff::Rat(r) if *r == -BigRational::one()) {
                            format!("-{power}")
                        } else {
                            format!("{}*{power}", coeff_string(cc))
                        }
                    }
                    _ => format!("({})*{power}", format_poly(c, names)),
                };
                if out.is_empty() {
                    out = piece;
                } else if let Some(rest) = piece.strip_prefix('-') {
                    let _ = write!(out, " - {rest}");
                } else {
                    let _ = write!(out, " + {rest}", rest = piece);
                }
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// triangular-set files
// ---------------------------------------------------------------------------

/// A parsed triangular-set file: a `vars:` header naming the algebraic
/// variables in order, an optional `main:` header for the free variable
/// (default `x`), and one `t<i>:` line per generator.
#[derive(Clone, Debug)]
pub struct TsetInput {
    pub names: VarNames,
    pub tset: TriangularSet,
}

pub fn parse_tset_file(text: &str) -> Result<TsetInput, Error> {
    let mut zvars: Option<Vec<String>> = None;
    let mut main: Option<String> = None;
    let mut gens: Vec<(usize, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| Error::Parse {
            position: lineno + 1,
            message: format!("line {} must look like 'key: value'", lineno + 1),
        })?;
        let key = key.trim();
        let value = value.trim();
        if key == "vars" {
            zvars = Some(value.split_whitespace().map(|s| s.to_string()).collect());
        } else if key == "main" {
            main = Some(value.to_string());
        } else if let Some(idx) = key.strip_prefix('t') {
            let i: usize = idx.parse().map_err(|_| Error::Parse {
                position: lineno + 1,
                message: format!("bad generator label '{key}'"),
            })?;
            gens.push((i, value.to_string()));
        } else {
            return Err(Error::Parse {
                position: lineno + 1,
                message: format!("unknown key '{key}'"),
            });
        }
    }
    let zvars = zvars.ok_or_else(|| Error::Input("missing 'vars:' header".into()))?;
    let main = match main {
        Some(m) => m,
        None => {
            if zvars.iter().any(|v| v == "x") {
                return Err(Error::Input(
                    "'x' is an algebraic variable here; add a 'main:' header".into(),
                ));
            }
            "x".into()
        }
    };
    if zvars.contains(&main) {
        return Err(Error::Input(
            "the main variable collides with an algebraic variable".into(),
        ));
    }
    let names = VarNames { zvars, main };
    gens.sort_by_key(|(i, _)| *i);
    for (expect, (i, _)) in gens.iter().enumerate() {
        if *i != expect + 1 {
            return Err(Error::Input(format!(
                "generator t{} is missing or duplicated",
                expect + 1
            )));
        }
    }
    if gens.len() != names.zvars.len() {
        return Err(Error::Input(format!(
            "{} variables declared but {} generators given",
            names.zvars.len(),
            gens.len()
        )));
    }
    let mut polys = Vec::with_capacity(gens.len());
    for (_, src) in &gens {
        polys.push(parse_poly(src, &names)?);
    }
    let tset = TriangularSet::new(polys)?;
    Ok(TsetInput { names, tset })
}

// ---------------------------------------------------------------------------
// seeded generator for benchmark inputs
// ---------------------------------------------------------------------------

/// SplitMix64: a tiny documented 64-bit generator, stable across platforms.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Two-digit coefficient: magnitude uniform in `[10, 99]`, random sign.
    fn two_digit(&mut self) -> i64 {
        let mag = 10 + self.below(90) as i64;
        if self.below(2) == 0 {
            mag
        } else {
            -mag
        }
    }
}

/// One benchmark configuration: extension degrees for the random triangular
/// set, input degrees `(d_a, d_b, d_g)` and whether the planted gcd is
/// monic.
#[derive(Clone, Debug)]
pub struct BenchProfile {
    pub name: String,
    pub ext_degrees: Vec<u64>,
    pub d_a: usize,
    pub d_b: usize,
    pub d_g: usize,
    pub monic_g: bool,
    pub seed: u64,
}

impl BenchProfile {
    /// `table1`: inputs of degree 6 and 5 with a planted non-monic gcd of
    /// degree 4. `table2`: same degrees, monic gcd. `table3`: inputs of
    /// degree 9 and 8, non-monic gcd of degree 4.
    pub fn by_name(name: &str, ext_degrees: Vec<u64>, seed: u64) -> Result<BenchProfile, Error> {
        if ext_degrees.is_empty() || ext_degrees.contains(&0) {
            return Err(Error::Input("extension degrees must be positive".into()));
        }
        let (d_a, d_b, d_g, monic_g) = match name {
            "table1" => (6, 5, 4, false),
            "table2" => (6, 5, 4, true),
            "table3" => (9, 8, 4, false),
            other => return Err(Error::Input(format!("unknown profile '{other}'"))),
        };
        Ok(BenchProfile {
            name: name.into(),
            ext_degrees,
            d_a,
            d_b,
            d_g,
            monic_g,
            seed,
        })
    }
}

/// Random dense element of `Q[z1..zk]` reduced with respect to the degree
/// profile, with two-digit coefficients.
fn random_element(rng: &mut SplitMix64, degrees: &[u64], k: usize) -> RPoly {
    if k == 0 {
        return RPoly::int(rng.two_digit());
    }
    let d = degrees[k - 1] as usize;
    let coeffs = (0..d)
        .map(|_| random_element(rng, degrees, k - 1))
        .collect();
    ring::from_coeffs(k, coeffs)
}

/// Random monic dense triangular set with the given main degrees.
pub fn random_tset(rng: &mut SplitMix64, degrees: &[u64]) -> TriangularSet {
    let mut gens = Vec::with_capacity(degrees.len());
    for (idx, &d) in degrees.iter().enumerate() {
        let level = idx + 1;
        let mut coeffs: Vec<RPoly> = (0..d)
            .map(|_| random_element(rng, degrees, level - 1))
            .collect();
        coeffs.push(RPoly::int(1));
        gens.push(ring::from_coeffs(level, coeffs));
    }
    TriangularSet::new(gens).expect("random set is triangular by construction")
}

/// Random polynomial of exact degree `deg` in the free variable over the
/// set, dense with two-digit coefficients; monic on request.
pub fn random_poly(
    rng: &mut SplitMix64,
    t: &TriangularSet,
    degrees: &[u64],
    deg: usize,
    monic: bool,
) -> RPoly {
    let x = t.len() + 1;
    let n = t.len();
    let mut coeffs: Vec<RPoly> = (0..deg).map(|_| random_element(rng, degrees, n)).collect();
    if monic {
        coeffs.push(RPoly::int(1));
    } else {
        loop {
            let lc = random_element(rng, degrees, n);
            if !lc.is_zero() {
                coeffs.push(lc);
                break;
            }
        }
    }
    ring::from_coeffs(x, coeffs)
}

/// Measurements from one benchmark run.
#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub profile: String,
    pub degrees: Vec<u64>,
    pub seed: u64,
    pub total_secs: f64,
    pub divide_secs: f64,
    pub primes_used: u64,
    pub components: usize,
}

/// Generates `a = a' * g`, `b = b' * g` per the profile and times the
/// modular componentwise gcd on them.
pub fn run_bench(profile: &BenchProfile, opts: &CGcdOptions) -> Result<BenchReport, Error> {
    let mut rng = SplitMix64::new(profile.seed);
    let t = random_tset(&mut rng, &profile.ext_degrees);
    let g = random_poly(
        &mut rng,
        &t,
        &profile.ext_degrees,
        profile.d_g,
        profile.monic_g,
    );
    let a_cof = random_poly(
        &mut rng,
        &t,
        &profile.ext_degrees,
        profile.d_a - profile.d_g,
        true,
    );
    let b_cof = random_poly(
        &mut rng,
        &t,
        &profile.ext_degrees,
        profile.d_b - profile.d_g,
        true,
    );
    let a = mul_mod(&a_cof, &g, &t);
    let b = mul_mod(&b_cof, &g, &t);
    let start = Instant::now();
    let (result, stats) = modular_cgcd(&a, &b, &t, opts)?;
    let total = start.elapsed();
    Ok(BenchReport {
        profile: profile.name.clone(),
        degrees: profile.ext_degrees.clone(),
        seed: profile.seed,
        total_secs: total.as_secs_f64(),
        divide_secs: stats.divide_time.as_secs_f64(),
        primes_used: stats.primes_used,
        components: result.components.len(),
    })
}

// ---------------------------------------------------------------------------
// command line
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "trigcd",
    about = "Componentwise gcds modulo triangular sets",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Componentwise gcd of two polynomials modulo a triangular set
    Gcd(GcdArgs),
    /// Reduced product of two polynomials
    Mul(MulArgs),
    /// Inverse of an element, or the split its zero-divisor induces
    Inv(InvArgs),
    /// Test whether the set stays radical modulo a prime
    RadicalTest(RadicalArgs),
    /// Run a seeded random benchmark profile
    Bench(BenchArgs),
}

#[derive(Args)]
struct GcdArgs {
    #[arg(long)]
    tset: String,
    /// Expression, or @file
    #[arg(long)]
    a: String,
    /// Expression, or @file
    #[arg(long)]
    b: String,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    no_check_prime: bool,
}

#[derive(Args)]
struct MulArgs {
    #[arg(long)]
    tset: String,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Report the number of base-field multiplications
    #[arg(long)]
    count_muls: bool,
}

#[derive(Args)]
struct InvArgs {
    #[arg(long)]
    tset: String,
    #[arg(long)]
    a: String,
}

#[derive(Args)]
struct RadicalArgs {
    #[arg(long)]
    tset: String,
    #[arg(long)]
    prime: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// table1, table2 or table3
    #[arg(long)]
    profile: String,
    /// Extension degrees, comma separated (e.g. 2,2)
    #[arg(long)]
    degrees: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Serialize)]
struct JsonComponent {
    tset: Vec<String>,
    gcd: String,
}

#[derive(Serialize)]
struct JsonSplit {
    level: usize,
    u: String,
    v: String,
}

#[derive(Serialize)]
struct JsonGcd {
    components: Vec<JsonComponent>,
    primes_used: u64,
    split_events: Vec<JsonSplit>,
}

fn read_operand(arg: &str) -> Result<String, Error> {
    if let Some(path) = arg.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

fn load_inputs(tset_path: &str) -> Result<TsetInput, Error> {
    let text = std::fs::read_to_string(tset_path)?;
    parse_tset_file(&text)
}

/// Runs the CLI; exit code 0 on success, 1 on invalid input, 2 when the
/// input set shows no evidence of being radical.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::NotRadical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Gcd(args) => cmd_gcd(args),
        Cmd::Mul(args) => cmd_mul(args),
        Cmd::Inv(args) => cmd_inv(args),
        Cmd::RadicalTest(args) => cmd_radical_test(args),
        Cmd::Bench(args) => cmd_bench(args),
    }
}

fn cmd_gcd(args: GcdArgs) -> Result<(), Error> {
    let input = load_inputs(&args.tset)?;
    let a = parse_poly(&read_operand(&args.a)?, &input.names)?;
    let b = parse_poly(&read_operand(&args.b)?, &input.names)?;
    let opts = CGcdOptions {
        check_prime: !args.no_check_prime,
        jobs: args.jobs,
        ..CGcdOptions::default()
    };
    let (result, stats) = modular_cgcd(&a, &b, &input.tset, &opts)?;
    print_gcd_output(&result, &stats, &input.names, args.json);
    Ok(())
}

fn print_gcd_output(result: &CGcdResult, stats: &RunStats, names: &VarNames, json: bool) {
    if json {
        let doc = JsonGcd {
            components: result
                .components
                .iter()
                .map(|c| JsonComponent {
                    tset: c
                        .tset
                        .gens()
                        .iter()
                        .map(|g| format_poly(g, names))
                        .collect(),
                    gcd: format_poly(&c.gcd, names),
                })
                .collect(),
            primes_used: stats.primes_used,
            split_events: stats
                .split_events
                .iter()
                .map(|s| JsonSplit {
                    level: s.level,
                    u: format_poly(&s.u, names),
                    v: format_poly(&s.v, names),
                })
                .collect(),
        };
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        return;
    }
    for (i, c) in result.components.iter().enumerate() {
        println!("component {}:", i + 1);
        for (j, g) in c.tset.gens().iter().enumerate() {
            println!("  t{}: {}", j + 1, format_poly(g, names));
        }
        println!("  gcd: {}", format_poly(&c.gcd, names));
    }
    println!("primes used: {}", stats.primes_used);
}

fn cmd_mul(args: MulArgs) -> Result<(), Error> {
    let input = load_inputs(&args.tset)?;
    let a = reduce(
        &parse_poly(&read_operand(&args.a)?, &input.names)?,
        &input.tset,
    );
    let b = reduce(
        &parse_poly(&read_operand(&args.b)?, &input.names)?,
        &input.tset,
    );
    if args.count_muls {
        let (prod, count) = with_mul_count(|| mul_mod(&a, &b, &input.tset));
        println!("{}", format_poly(&prod, &input.names));
        println!("multiplications: {count}");
        let model = MulCostModel::for_tset(&input.tset);
        println!("dense bound: {}", mul_cost_bound(&model));
    } else {
        let prod = mul_mod(&a, &b, &input.tset);
        println!("{}", format_poly(&prod, &input.names));
    }
    Ok(())
}

fn cmd_inv(args: InvArgs) -> Result<(), Error> {
    let input = load_inputs(&args.tset)?;
    let a = reduce(
        &parse_poly(&read_operand(&args.a)?, &input.names)?,
        &input.tset,
    );
    match inv_q(&a, &input.tset)? {
        InvQOutcome::Inverse(v) => println!("{}", format_poly(&v, &input.names)),
        InvQOutcome::ZeroDivisor { signal, split } => {
            println!(
                "zero-divisor: {} (level {})",
                format_poly(&signal.witness, &input.names),
                signal.level
            );
            for (tag, t) in [("first", &split.0), ("second", &split.1)] {
                println!("{tag} component:");
                for (j, g) in t.gens().iter().enumerate() {
                    println!("  t{}: {}", j + 1, format_poly(g, &input.names));
                }
            }
        }
    }
    Ok(())
}

fn cmd_radical_test(args: RadicalArgs) -> Result<(), Error> {
    let input = load_inputs(&args.tset)?;
    if !crate::cgcd::is_prime_u64(args.prime) {
        return Err(Error::Input(format!(
            "{} is not a prime number",
            args.prime
        )));
    }
    match is_radical_prime(&input.tset, args.prime)? {
        RadicalOutcome::Radical => println!("True"),
        RadicalOutcome::NotRadical => println!("False"),
        RadicalOutcome::ZeroDivisor(sig) => println!(
            "ZeroDivisor: {} (level {})",
            format_poly(&sig.witness, &input.names),
            sig.level
        ),
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let degrees: Result<Vec<u64>, _> = args.degrees.split(',').map(|s| s.trim().parse()).collect();
    let degrees = degrees
        .map_err(|_| Error::Input("--degrees expects a comma-separated list of integers".into()))?;
    let profile = BenchProfile::by_name(&args.profile, degrees, args.seed)?;
    let opts = CGcdOptions {
        jobs: args.jobs,
        ..CGcdOptions::default()
    };
    let report = run_bench(&profile, &opts)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("profile  degrees      seed  time(s)  divide(s)  #primes  components");
        println!(
            "{:<8} {:<12} {:<5} {:<8.3} {:<10.3} {:<8} {}",
            report.profile,
            format!("{:?}", report.degrees),
            report.seed,
            report.total_secs,
            report.divide_secs,
            report.primes_used,
            report.components,
        );
    }
    Ok(())
}
