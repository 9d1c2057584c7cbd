//! The modular componentwise-gcd driver: prime management, per-prime gcd
//! images, CRT accumulation, rational reconstruction, the check-prime
//! shortcut, trial division, and triangular-set splitting whenever a
//! zero-divisor gets resolved.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::hensel::{self, handle_zero_divisor, BoundSchedule, SplitOutcome};
use crate::modp::{
    is_radical_prime, monic_euclidean_in, project_tset, GcdOrZd, RadicalOutcome, ZdSignal,
};
use crate::ring::{
    self, denominator_lcm, div_rem, lift_to_q, mul_raw, normal_form, project_mod_p, reduce, RPoly,
    TriangularSet,
};
use crate::Error;

const SPLIT_DEPTH_CAP: usize = 64;

/// One output component: a triangular set over `Q` together with the monic
/// gcd of the inputs modulo that set (or zero when both inputs vanish).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub tset: TriangularSet,
    pub gcd: RPoly,
}

/// The componentwise gcd: a nonempty list of components emitted in
/// depth-first split order with the `u` branch first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGcdResult {
    pub components: Vec<Component>,
}

impl CGcdResult {
    /// Sorts components into a canonical order (lexicographic on the
    /// structural ordering of generators, then the gcd) for comparisons.
    pub fn canonicalize(&mut self) {
        self.components
            .sort_by(|a, b| (a.tset.gens(), &a.gcd).cmp(&(b.tset.gens(), &b.gcd)));
    }

    /// Sum of component extension degrees; equals the degree of the input
    /// set because dimensions add across the split factors.
    pub fn degree_sum(&self) -> u128 {
        self.components.iter().map(|c| c.tset.degree()).sum()
    }
}

/// A resolved split, exposed for inspection and in the CLI JSON output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEvent {
    pub level: usize,
    pub u: RPoly,
    pub v: RPoly,
}

/// A zero-divisor witness captured during a run, with the projected prefix
/// it was signalled against. Only recorded when
/// [`CGcdOptions::record_zd`] is set.
#[derive(Clone, Debug)]
pub struct ZdRecord {
    pub prefix: Vec<RPoly>,
    pub witness: RPoly,
    pub level: usize,
}

/// Counters and traces from one driver run.
#[derive(Clone, Debug, Default)]
pub struct RunStats {
    /// Primes consumed from the stream (images, check primes, skipped
    /// unlucky or non-radical primes).
    pub primes_used: u64,
    pub split_events: Vec<SplitEvent>,
    /// Wall time spent in rational trial divisions.
    pub divide_time: Duration,
    /// Accepted accumulator degrees in order; never increases within a
    /// component run.
    pub dg_history: Vec<usize>,
    pub zd_records: Vec<ZdRecord>,
}

/// Driver knobs.
#[derive(Clone, Debug)]
pub struct CGcdOptions {
    /// Validate a successful reconstruction against one extra prime before
    /// the rational trial division.
    pub check_prime: bool,
    /// Number of per-prime images computed concurrently; results are folded
    /// in stream order, so the output does not depend on this.
    pub jobs: usize,
    pub max_primes: u64,
    /// Consecutive all-false radical tests before giving up on the input.
    pub nonradical_limit: u32,
    pub record_zd: bool,
}

impl Default for CGcdOptions {
    fn default() -> Self {
        CGcdOptions {
            check_prime: true,
            jobs: 1,
            max_primes: 100_000,
            nonradical_limit: 8,
            record_zd: false,
        }
    }
}

// ---------------------------------------------------------------------------
// prime stream
// ---------------------------------------------------------------------------

/// Descending stream of primes below `2^31` that skips bad primes: those
/// dividing a denominator of the triangular set or the inputs, and those
/// killing a leading coefficient.
#[derive(Clone, Debug)]
pub struct PrimeStream {
    candidate: u64,
    den_lcm: BigInt,
    lcs: Vec<RPoly>,
}

impl PrimeStream {
    pub fn new(t: &TriangularSet, a: &RPoly, b: &RPoly) -> PrimeStream {
        let mut den = denominator_lcm(a);
        den = num_integer::lcm(den, denominator_lcm(b));
        for g in t.gens() {
            den = num_integer::lcm(den, denominator_lcm(g));
        }
        let x = t.len() + 1;
        let mut lcs = Vec::new();
        for f in [a, b] {
            if !f.is_zero() {
                lcs.push(f.lc_in(x));
            }
        }
        PrimeStream {
            candidate: 2147483647,
            den_lcm: den,
            lcs,
        }
    }

    /// Next prime dividing no tracked denominator and vanishing on no
    /// tracked leading coefficient.
    pub fn next_prime(&mut self) -> Result<u64, Error> {
        loop {
            if self.candidate < 2 {
                return Err(Error::PrimesExhausted);
            }
            let p = self.candidate;
            self.candidate = if p == 2 { 0 } else { p - 2 };
            if !is_prime_u64(p) {
                continue;
            }
            if (&self.den_lcm % BigInt::from(p)).is_zero() {
                continue;
            }
            let vanishing = self.lcs.iter().any(|lc| match project_mod_p(lc, p) {
                Ok(img) => img.is_zero(),
                Err(_) => true,
            });
            if vanishing {
                continue;
            }
            return Ok(p);
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = ring::powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ring::mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// CRT accumulator
// ---------------------------------------------------------------------------

/// CRT state: combined integer image `g`, modulus `m`, and the degree of
/// the images currently accepted.
#[derive(Clone, Debug)]
pub struct ModAccumulator {
    pub g: RPoly,
    pub m: BigInt,
    pub dg: usize,
}

enum FoldOutcome {
    Combined,
    /// Image had larger degree: the new prime is unlucky, image dropped.
    UnluckyImage,
    /// Image had smaller degree: all previous primes were unlucky, the
    /// accumulator restarted from this image.
    Restarted,
}

impl ModAccumulator {
    fn start(g_p: &RPoly, p: u64, x: usize) -> ModAccumulator {
        ModAccumulator {
            g: lift_to_q(g_p),
            m: BigInt::from(p),
            dg: g_p.deg_in(x),
        }
    }

    fn fold(&mut self, g_p: &RPoly, p: u64, x: usize) -> Result<FoldOutcome, Error> {
        let d = g_p.deg_in(x);
        match d.cmp(&self.dg) {
            std::cmp::Ordering::Equal => {
                self.g = hensel::crt_combine(&self.g, &self.m, g_p, p)?;
                self.m *= p;
                Ok(FoldOutcome::Combined)
            }
            std::cmp::Ordering::Greater => Ok(FoldOutcome::UnluckyImage),
            std::cmp::Ordering::Less => {
                *self = ModAccumulator::start(g_p, p, x);
                Ok(FoldOutcome::Restarted)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// per-prime images
// ---------------------------------------------------------------------------

enum ImageOutcome {
    NotRadicalHere,
    Zd(ZdSignal),
    Image(RPoly),
}

fn prime_image(t_q: &TriangularSet, a: &RPoly, b: &RPoly, p: u64) -> Result<ImageOutcome, Error> {
    match is_radical_prime(t_q, p)? {
        RadicalOutcome::NotRadical => Ok(ImageOutcome::NotRadicalHere),
        RadicalOutcome::ZeroDivisor(sig) => Ok(ImageOutcome::Zd(sig)),
        RadicalOutcome::Radical => {
            let t_p = project_tset(t_q, p)?;
            let a_p = project_mod_p(a, p)?;
            let b_p = project_mod_p(b, p)?;
            match monic_euclidean_in(&a_p, &b_p, t_p.gens()) {
                GcdOrZd::Zd(sig) => Ok(ImageOutcome::Zd(sig)),
                GcdOrZd::Gcd(g) => Ok(ImageOutcome::Image(g)),
            }
        }
    }
}

/// Computes images for the next `jobs` primes; with `jobs > 1` the images
/// run on scoped threads but are queued in stream order.
fn refill_images(
    pending: &mut VecDeque<(u64, ImageOutcome)>,
    stream: &mut PrimeStream,
    t: &TriangularSet,
    a: &RPoly,
    b: &RPoly,
    jobs: usize,
) -> Result<(), Error> {
    if !pending.is_empty() {
        return Ok(());
    }
    let mut primes = Vec::with_capacity(jobs);
    for _ in 0..jobs.max(1) {
        primes.push(stream.next_prime()?);
    }
    if primes.len() == 1 {
        let p = primes[0];
        pending.push_back((p, prime_image(t, a, b, p)?));
        return Ok(());
    }
    let results: Vec<Result<ImageOutcome, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = primes
            .iter()
            .map(|&p| scope.spawn(move || prime_image(t, a, b, p)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("image thread panicked"))
            .collect()
    });
    for (p, r) in primes.into_iter().zip(results) {
        pending.push_back((p, r?));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// driver
// ---------------------------------------------------------------------------

/// Computes the componentwise gcd of `a` and `b` over `Q` modulo the
/// radical zero-dimensional triangular set `t`.
///
/// Every returned gcd is certified by exact trial division against both
/// inputs, so unlucky primes can only cost time, never correctness. When a
/// zero-divisor is met it is lifted to a factorization over `Q` and the set
/// is split; both branches are finished recursively.
pub fn modular_cgcd(
    a: &RPoly,
    b: &RPoly,
    t: &TriangularSet,
    opts: &CGcdOptions,
) -> Result<(CGcdResult, RunStats), Error> {
    assert!(
        t.prime().is_none() && a.prime().is_none() && b.prime().is_none(),
        "modular gcd expects rational inputs"
    );
    let mut stats = RunStats::default();
    let mut components = Vec::new();
    let mut bounds = BoundSchedule::new();
    run_component(
        a,
        b,
        t.clone(),
        opts,
        &mut stats,
        &mut bounds,
        &mut components,
        0,
    )?;
    Ok((CGcdResult { components }, stats))
}

fn degree_key(f: &RPoly, x: usize) -> isize {
    if f.is_zero() {
        -1
    } else {
        f.deg_in(x) as isize
    }
}

#[allow(clippy::too_many_arguments)]
fn run_component(
    a: &RPoly,
    b: &RPoly,
    t: TriangularSet,
    opts: &CGcdOptions,
    stats: &mut RunStats,
    bounds: &mut BoundSchedule,
    out: &mut Vec<Component>,
    depth: usize,
) -> Result<(), Error> {
    if depth > SPLIT_DEPTH_CAP {
        return Err(Error::ResourceLimit("splitting recursion too deep".into()));
    }
    let x = t.len() + 1;
    let mut a = reduce(a, &t);
    let mut b = reduce(b, &t);
    if degree_key(&a, x) < degree_key(&b, x) {
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_zero() && b.is_zero() {
        out.push(Component { tset: t, gcd: a });
        return Ok(());
    }

    let jobs = opts.jobs.max(1);
    let mut stream = PrimeStream::new(&t, &a, &b);
    let mut pending: VecDeque<(u64, ImageOutcome)> = VecDeque::new();
    let mut acc: Option<ModAccumulator> = None;
    let mut consecutive_false = 0u32;
    let mut seen_radical = false;

    loop {
        if stats.primes_used >= opts.max_primes {
            return Err(Error::ResourceLimit(format!(
                "prime budget of {} exhausted",
                opts.max_primes
            )));
        }
        refill_images(&mut pending, &mut stream, &t, &a, &b, jobs)?;
        let (p, outcome) = pending.pop_front().expect("refilled");
        stats.primes_used += 1;
        match outcome {
            ImageOutcome::NotRadicalHere => {
                consecutive_false += 1;
                if !seen_radical && consecutive_false >= opts.nonradical_limit {
                    return Err(Error::NotRadical(format!(
                        "radical test failed for {consecutive_false} consecutive primes"
                    )));
                }
            }
            ImageOutcome::Zd(sig) => {
                consecutive_false = 0;
                record_zd(stats, opts, &t, p, &sig);
                match handle_zero_divisor(&t, p, &sig, bounds)? {
                    SplitOutcome::Fail | SplitOutcome::DeeperZd(_) => {}
                    SplitOutcome::Split { level, u, v } => {
                        let (tu, tv) = split_tset(&t, level, &u, &v)?;
                        stats.split_events.push(SplitEvent { level, u, v });
                        let mut left_bounds = bounds.clone();
                        run_component(&a, &b, tu, opts, stats, &mut left_bounds, out, depth + 1)?;
                        let mut right_bounds = bounds.clone();
                        run_component(&a, &b, tv, opts, stats, &mut right_bounds, out, depth + 1)?;
                        return Ok(());
                    }
                }
            }
            ImageOutcome::Image(g_p) => {
                consecutive_false = 0;
                seen_radical = true;
                let accepted = match &mut acc {
                    None => {
                        acc = Some(ModAccumulator::start(&g_p, p, x));
                        stats.dg_history.push(g_p.deg_in(x));
                        true
                    }
                    Some(m) => match m.fold(&g_p, p, x)? {
                        FoldOutcome::Combined => {
                            stats.dg_history.push(m.dg);
                            true
                        }
                        FoldOutcome::Restarted => {
                            stats.dg_history.push(m.dg);
                            true
                        }
                        FoldOutcome::UnluckyImage => false,
                    },
                };
                if !accepted {
                    continue;
                }
                let m = acc.as_ref().unwrap();
                let h = match hensel::rational_reconstruct_poly(&m.g, &m.m) {
                    Some(h) => h,
                    None => continue,
                };
                if opts.check_prime {
                    match run_check_prime(
                        &h,
                        &t,
                        &a,
                        &b,
                        opts,
                        stats,
                        &mut stream,
                        &mut pending,
                        jobs,
                        &mut consecutive_false,
                        &mut seen_radical,
                    )? {
                        CheckVerdict::Agreed => {
                            if certify(&h, &a, &b, &t, stats) {
                                out.push(Component { tset: t, gcd: h });
                                return Ok(());
                            }
                        }
                        CheckVerdict::Disagreed(cp, g_cp) => {
                            // fold the disagreeing check image as a regular
                            // main-loop image and keep collecting primes
                            if let Some(m) = &mut acc {
                                if let FoldOutcome::Combined | FoldOutcome::Restarted =
                                    m.fold(&g_cp, cp, x)?
                                {
                                    stats.dg_history.push(m.dg);
                                }
                            }
                        }
                    }
                } else if certify(&h, &a, &b, &t, stats) {
                    out.push(Component { tset: t, gcd: h });
                    return Ok(());
                }
            }
        }
    }
}

enum CheckVerdict {
    Agreed,
    Disagreed(u64, RPoly),
}

/// Draws further primes until one yields a clean image, then compares it
/// against the reconstruction. Primes whose radical test or Euclidean run
/// misbehaves are simply skipped, as are primes dividing a denominator of
/// the candidate.
#[allow(clippy::too_many_arguments)]
fn run_check_prime(
    h: &RPoly,
    t: &TriangularSet,
    a: &RPoly,
    b: &RPoly,
    opts: &CGcdOptions,
    stats: &mut RunStats,
    stream: &mut PrimeStream,
    pending: &mut VecDeque<(u64, ImageOutcome)>,
    jobs: usize,
    consecutive_false: &mut u32,
    seen_radical: &mut bool,
) -> Result<CheckVerdict, Error> {
    loop {
        if stats.primes_used >= opts.max_primes {
            return Err(Error::ResourceLimit(format!(
                "prime budget of {} exhausted",
                opts.max_primes
            )));
        }
        refill_images(pending, stream, t, a, b, jobs)?;
        let (cp, outcome) = pending.pop_front().expect("refilled");
        stats.primes_used += 1;
        match outcome {
            ImageOutcome::NotRadicalHere => {
                *consecutive_false += 1;
                if !*seen_radical && *consecutive_false >= opts.nonradical_limit {
                    return Err(Error::NotRadical(format!(
                        "radical test failed for {} consecutive primes",
                        *consecutive_false
                    )));
                }
            }
            ImageOutcome::Zd(sig) => {
                *consecutive_false = 0;
                record_zd(stats, opts, t, cp, &sig);
                // a zero-divisor during the check only disqualifies this
                // prime as a check prime
            }
            ImageOutcome::Image(g_cp) => {
                *consecutive_false = 0;
                *seen_radical = true;
                let h_cp = match project_mod_p(h, cp) {
                    Ok(img) => img,
                    Err(_) => continue,
                };
                if h_cp == g_cp {
                    return Ok(CheckVerdict::Agreed);
                }
                return Ok(CheckVerdict::Disagreed(cp, g_cp));
            }
        }
    }
}

fn certify(h: &RPoly, a: &RPoly, b: &RPoly, t: &TriangularSet, stats: &mut RunStats) -> bool {
    let start = Instant::now();
    let ok = trial_divide(h, a, t) && trial_divide(h, b, t);
    stats.divide_time += start.elapsed();
    ok
}

fn record_zd(stats: &mut RunStats, opts: &CGcdOptions, t: &TriangularSet, p: u64, sig: &ZdSignal) {
    if !opts.record_zd {
        return;
    }
    let prefix: Result<Vec<_>, _> = t
        .prefix(sig.level)
        .iter()
        .map(|g| project_mod_p(g, p))
        .collect();
    if let Ok(prefix) = prefix {
        stats.zd_records.push(ZdRecord {
            prefix,
            witness: sig.witness.clone(),
            level: sig.level,
        });
    }
}

// ---------------------------------------------------------------------------
// splitting and certification
// ---------------------------------------------------------------------------

/// Replaces `t_k` by the monic factors `u` and `v`, re-reducing all later
/// generators so both results are valid triangular sets. Requires
/// `u * v = t_k mod <T_{k-1}>` exactly; the extension degrees of the two
/// children add up to the degree of the input set.
pub fn split_tset(
    t: &TriangularSet,
    k: usize,
    u: &RPoly,
    v: &RPoly,
) -> Result<(TriangularSet, TriangularSet), Error> {
    assert!(k >= 1 && k <= t.len(), "split level out of range");
    let prefix = t.prefix(k - 1);
    let u = normal_form(u, prefix);
    let v = normal_form(v, prefix);
    for f in [&u, &v] {
        if f.deg_in(k) == 0 {
            return Err(Error::InvalidFactorization(
                "factors must be non-constant".into(),
            ));
        }
        if !f.is_monic_in(k) {
            return Err(Error::InvalidFactorization(format!(
                "factor must be monic in z{k}"
            )));
        }
    }
    let product = normal_form(&mul_raw(&u, &v), prefix);
    if &product != t.gen(k) {
        return Err(Error::InvalidFactorization(
            "product of the factors does not reproduce the generator".into(),
        ));
    }
    let build = |factor: &RPoly| -> Result<TriangularSet, Error> {
        let mut gens = prefix.to_vec();
        gens.push(factor.clone());
        for i in k + 1..=t.len() {
            let reduced = normal_form(t.gen(i), &gens);
            gens.push(reduced);
        }
        TriangularSet::new(gens)
    };
    Ok((build(&u)?, build(&v)?))
}

/// Exact divisibility test: true iff `h` divides `a` modulo `<T>`.
/// `h` must be monic in its main variable.
pub fn trial_divide(h: &RPoly, a: &RPoly, t: &TriangularSet) -> bool {
    match div_rem(a, h, t) {
        Ok((_, r)) => r.is_zero(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{parse_poly, SplitMix64, VarNames};
    use crate::ring::{mul_mod, mul_raw, reduce};

    fn p(src: &str, n: usize) -> RPoly {
        parse_poly(src, &VarNames::standard(n)).unwrap()
    }

    fn tset(gens: &[&str], n: usize) -> TriangularSet {
        TriangularSet::new(gens.iter().map(|g| p(g, n)).collect()).unwrap()
    }

    #[test]
    fn gcd_over_rationals() {
        let empty = TriangularSet::empty();
        let (res, _) = modular_cgcd(
            &p("x^2 - 1", 0),
            &p("x - 1", 0),
            &empty,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(res.components.len(), 1);
        assert!(res.components[0].tset.is_empty());
        assert_eq!(res.components[0].gcd, p("x - 1", 0));
    }

    #[test]
    fn split_at_the_top_level_of_a_tower() {
        // z3^2 + 1 factors as (z3 - z1)(z3 + z1) over the two lower levels
        let t = tset(&["z1^2 + 1", "z2^2 - 2", "z3^2 + 1"], 3);
        let a = p("x^2 + (z3 - z1)*x + 5", 3);
        let b = p("(z3 + z1)*x + z2", 3);
        let (mut res, stats) = modular_cgcd(&a, &b, &t, &Default::default()).unwrap();
        res.canonicalize();
        assert_eq!(res.components.len(), 2);
        assert_eq!(stats.split_events.len(), 1);
        assert_eq!(stats.split_events[0].level, 3);
        let gens: Vec<&[RPoly]> = res.components.iter().map(|c| c.tset.gens()).collect();
        assert!(gens
            .iter()
            .any(|g| g[2] == p("z3 - z1", 3) && g[..2] == [p("z1^2 + 1", 3), p("z2^2 - 2", 3)]));
        assert!(gens.iter().any(|g| g[2] == p("z3 + z1", 3)));
        assert_eq!(res.degree_sum(), t.degree());
    }

    #[test]
    fn nested_splits_match_oracle() {
        // fully reducible tower; one input vanishes on a single leaf, so the
        // run has to split at the top level and then again below
        let mut rng = SplitMix64::new(7777);
        let mut splits = 0;
        let mut done = 0;
        while done < 10 {
            let c1 = (rng.next_u64() % 7) as i64 - 3;
            let c2 = loop {
                let c = (rng.next_u64() % 7) as i64 - 3;
                if c != c1 {
                    break c;
                }
            };
            let z1 = RPoly::var(1, &crate::Coeff::from_int(0));
            let z2 = RPoly::var(2, &crate::Coeff::from_int(0));
            let lin = |c: i64| crate::ring::sub(&z1, &RPoly::int(c));
            let t1 = mul_raw(&lin(c1), &lin(c2));
            let scale1 = RPoly::int((rng.next_u64() % 5) as i64);
            let off1 = RPoly::int((rng.next_u64() % 9) as i64 - 4);
            let scale2 = RPoly::int((rng.next_u64() % 5) as i64);
            let off2 = RPoly::int((rng.next_u64() % 9) as i64 + 6);
            let f1 = crate::ring::sub(&z2, &crate::ring::add(&mul_raw(&scale1, &z1), &off1));
            let f2 = crate::ring::sub(&z2, &crate::ring::add(&mul_raw(&scale2, &z1), &off2));
            let prefix = TriangularSet::new(vec![t1.clone()]).unwrap();
            let t2g = reduce(&mul_raw(&f1, &f2), &prefix);
            let t = match TriangularSet::new(vec![t1, t2g]) {
                Ok(t) => t,
                Err(_) => continue,
            };
            if !crate::oracle::is_radical_q(&t).unwrap_or(false) {
                continue;
            }
            let blocker = reduce(&mul_raw(&lin(c1), &f1), &t);
            let x = RPoly::var(3, &crate::Coeff::from_int(0));
            let a = p("x^3 + 3*x + 1", 2);
            let b = crate::ring::add(&mul_mod(&blocker, &x, &t), &RPoly::int(1));
            let (mut m, stats) = modular_cgcd(&a, &b, &t, &Default::default()).unwrap();
            let mut o = crate::oracle::euclid_q_cgcd(&a, &b, &t).unwrap();
            m.canonicalize();
            o.canonicalize();
            assert_eq!(m, o);
            assert_eq!(m.degree_sum(), t.degree());
            splits += stats.split_events.len();
            done += 1;
        }
        assert!(splits >= 10);
    }

    #[test]
    fn coprime_inputs_give_unit_gcd() {
        let t = tset(&["z1^2 - 2"], 1);
        let (res, _) =
            modular_cgcd(&p("x^2 + z1", 1), &p("x + 3", 1), &t, &Default::default()).unwrap();
        assert_eq!(res.components.len(), 1);
        assert!(res.components[0].gcd.is_one());
    }

    #[test]
    fn zero_inputs_give_zero_gcd() {
        let t = tset(&["z1^2 - 2"], 1);
        let zero = p("0", 1);
        let (res, _) = modular_cgcd(&zero, &zero, &t, &Default::default()).unwrap();
        assert_eq!(res.components.len(), 1);
        assert!(res.components[0].gcd.is_zero());
        // gcd(a, 0) is the monic normalization of a
        let a = p("3*x^2 + 3*z1", 1);
        let (res, _) = modular_cgcd(&a, &zero, &t, &Default::default()).unwrap();
        assert_eq!(res.components[0].gcd, p("x^2 + z1", 1));
    }

    #[test]
    fn split_tset_examples() {
        let t = tset(&["z1^2+1", "z2^2+1"], 2);
        let (tu, tv) = split_tset(&t, 2, &p("z2 - z1", 2), &p("z2 + z1", 2)).unwrap();
        assert_eq!(tu.gens(), &[p("z1^2+1", 2), p("z2 - z1", 2)][..]);
        assert_eq!(tv.gens(), &[p("z1^2+1", 2), p("z2 + z1", 2)][..]);
        assert_eq!(tu.degree() + tv.degree(), t.degree());

        // later generators are re-reduced against the replacement
        let t = tset(
            &[
                "z1^2 - 1",
                "z2^3 + 9*z2^2 + (3/2*z1 + 51/2)*z2 - 53/2*z1 - 3/2",
            ],
            2,
        );
        let (tu, _) = split_tset(&t, 1, &p("z1 - 1", 2), &p("z1 + 1", 2)).unwrap();
        assert_eq!(tu.gen(2), &p("z2^3 + 9*z2^2 + 27*z2 - 28", 2));

        // constant cofactor is rejected
        let t = tset(&["z1^2+1"], 1);
        assert!(matches!(
            split_tset(&t, 1, &p("z1^2+1", 1), &p("1", 1)),
            Err(Error::InvalidFactorization(_))
        ));
        // wrong product is rejected
        let t = tset(&["z1^2+1", "z2^2+1"], 2);
        assert!(matches!(
            split_tset(&t, 2, &p("z2 - 1", 2), &p("z2 + 1", 2)),
            Err(Error::InvalidFactorization(_))
        ));
    }

    #[test]
    fn trial_divide_examples() {
        let empty = TriangularSet::empty();
        assert!(trial_divide(&p("x - 1", 0), &p("x^2 - 1", 0), &empty));
        assert!(!trial_divide(&p("x - 1", 0), &p("x^2 + 1", 0), &empty));
    }

    #[test]
    fn prime_stream_behaviour() {
        let empty = TriangularSet::empty();
        let mut s = PrimeStream::new(&empty, &p("x", 0), &p("x", 0));
        assert_eq!(s.next_prime().unwrap(), 2147483647);

        // denominators of the set are never divided
        let t = tset(
            &[
                "z1^2 - 1",
                "z2^3 + 9*z2^2 + (3/2*z1 + 51/2)*z2 - 53/2*z1 - 3/2",
            ],
            2,
        );
        let mut s = PrimeStream::new(&t, &p("x", 2), &p("x", 2));
        for _ in 0..50 {
            assert_ne!(s.next_prime().unwrap(), 2);
        }

        // leading coefficients must not vanish
        let a = p("2147483647*x + 1", 0);
        let mut s = PrimeStream::new(&empty, &a, &p("x", 0));
        assert_eq!(s.next_prime().unwrap(), 2147483629);
    }

    #[test]
    fn accumulator_degrees_never_increase() {
        // a single-component run over an irreducible extension: the trace
        // of accepted image degrees must be non-increasing
        let t = tset(&["z1^6 + 3*z1^5 + 6*z1^4 + z1^3 - 3*z1^2 + 12*z1 + 16"], 1);
        let f = p(
            "x - 4/3 - 11/12*z1 + 7/12*z1^2 - 1/6*z1^3 - 1/12*z1^4 - 1/12*z1^5",
            1,
        );
        let a = p("x^3 - 3", 1);
        let b = mul_mod(&f, &p("x + 1", 1), &t);
        let (_, stats) = modular_cgcd(&a, &b, &t, &Default::default()).unwrap();
        assert!(!stats.dg_history.is_empty());
        assert!(stats.dg_history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn split_soundness() {
        // rerunning on each component and concatenating reproduces the result
        let t = tset(&["z1^2+1", "z2^2+1"], 2);
        let a = p("x^4 + (z1 + 18*z2)*x^3 + (-z2 + 3*z1)*x^2 + 324*x + 323", 2);
        let b = p("x^3 + (z1 + 18*z2)*x^2 + (-19*z2 + 2*z1)*x + 324", 2);
        let (mut whole, _) = modular_cgcd(&a, &b, &t, &Default::default()).unwrap();
        let mut rerun = Vec::new();
        for c in &whole.components {
            let (sub, _) = modular_cgcd(&a, &b, &c.tset, &Default::default()).unwrap();
            rerun.extend(sub.components);
        }
        let mut rerun = CGcdResult { components: rerun };
        whole.canonicalize();
        rerun.canonicalize();
        assert_eq!(whole, rerun);
    }

    #[test]
    fn output_sensitive_prime_usage() {
        // a small monic planted gcd is recovered with few primes no matter
        // how large the cofactor coefficients get
        let t = tset(&["z1^2 + 3*z1 + 7"], 1);
        let g = p("x^2 + (5*z1 + 3)*x + 12", 1);
        let mut rng = SplitMix64::new(5);
        for scale in [1i64, 1_000_003, 1_000_000_007] {
            let big = |rng: &mut SplitMix64| RPoly::int((rng.next_u64() % 90 + 10) as i64 * scale);
            let a_cof =
                crate::ring::from_coeffs(2, vec![big(&mut rng), big(&mut rng), RPoly::int(1)]);
            let b_cof = crate::ring::from_coeffs(2, vec![big(&mut rng), RPoly::int(1)]);
            let a = mul_mod(&a_cof, &g, &t);
            let b = mul_mod(&b_cof, &g, &t);
            let (res, stats) = modular_cgcd(&a, &b, &t, &Default::default()).unwrap();
            assert_eq!(res.components.len(), 1);
            assert_eq!(res.components[0].gcd, g);
            assert!(stats.primes_used <= 4, "primes = {}", stats.primes_used);
        }
    }

    #[test]
    fn jobs_mode_is_deterministic() {
        let t = tset(&["z1^2+1", "z2^2+1"], 2);
        let a = p("x^4 + (z1 + 18*z2)*x^3 + (-z2 + 3*z1)*x^2 + 324*x + 323", 2);
        let b = p("x^3 + (z1 + 18*z2)*x^2 + (-19*z2 + 2*z1)*x + 324", 2);
        let (r1, s1) = modular_cgcd(&a, &b, &t, &Default::default()).unwrap();
        let opts = CGcdOptions {
            jobs: 3,
            ..Default::default()
        };
        let (r3, s3) = modular_cgcd(&a, &b, &t, &opts).unwrap();
        assert_eq!(r1, r3);
        assert_eq!(s1.primes_used, s3.primes_used);
    }

    #[test]
    fn non_radical_input_is_rejected() {
        let t = tset(&["z1^2 - 2*z1 + 1"], 1);
        let err =
            modular_cgcd(&p("x^2 - 1", 1), &p("x - 1", 1), &t, &Default::default()).unwrap_err();
        assert!(matches!(err, Error::NotRadical(_)));
    }

    #[test]
    fn primality_check() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(2147483647));
        assert!(!is_prime_u64(2147483647 - 2));
        assert!(is_prime_u64(2147483629));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
    }
}
