//! Linear Hensel lifting of a coprime monic factorization modulo `p` to a
//! factorization over `Q`, which is how zero-divisors get resolved into
//! splits of the triangular set. Also houses rational reconstruction and
//! Chinese remaindering, the other half of the image-combination toolkit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::modp::{extended_euclidean_in, monic_euclidean_in, EeaOrZd, GcdOrZd, ZdSignal};
use crate::ring::{
    self, div_rem_core, from_coeffs, lift_to_q, mod_residue, mul_mod_in, mul_raw, mulmod,
    normal_form, powmod, project_mod_p, Coeff, RPoly, TriangularSet,
};
use crate::Error;

const DEEPER_ZD_CAP: usize = 64;

/// Loop state of one lift: the current factors over `Q`, the Bezout
/// cofactors of the initial factors over `Z_p`, the working modulus `p^i`
/// and the termination bound.
#[derive(Clone, Debug)]
pub struct HenselState {
    pub u: RPoly,
    pub v: RPoly,
    pub s: RPoly,
    pub t: RPoly,
    pub modulus: BigInt,
    pub bound: BigInt,
}

/// Outcome of a lift attempt.
#[derive(Clone, Debug)]
pub enum LiftOutcome {
    /// Monic factors with `f = u * v` holding exactly over `Q` modulo the
    /// prefix set, certified by trial division.
    Lifted { u: RPoly, v: RPoly },
    /// The bound was exhausted before reconstruction succeeded; callers
    /// pick a new prime or a bigger bound.
    Fail,
    /// A zero-divisor turned up in the initial Bezout solve.
    ZeroDivisor(ZdSignal),
}

/// Outcome of resolving one zero-divisor signal.
#[derive(Clone, Debug)]
pub enum SplitOutcome {
    /// `t_level = u * v` exactly over `Q`, both factors monic.
    Split {
        level: usize,
        u: RPoly,
        v: RPoly,
    },
    Fail,
    /// A deeper zero-divisor was discovered; the resolution restarts there.
    DeeperZd(ZdSignal),
}

/// Bound schedule for repeated lift attempts: `2^60` on first use, squared
/// on every retry. Scoped to one gcd run rather than process-global so that
/// concurrent drivers stay independent.
#[derive(Clone, Debug, Default)]
pub struct BoundSchedule {
    current: Option<BigInt>,
}

impl BoundSchedule {
    pub fn new() -> BoundSchedule {
        BoundSchedule::default()
    }

    /// Next bound: `2^60`, then the square of the previous bound.
    pub fn next_bound(&mut self) -> BigInt {
        let b = match self.current.take() {
            None => BigInt::one() << 60,
            Some(b) => &b * &b,
        };
        self.current = Some(b.clone());
        b
    }
}

/// Solves `sigma*a0 + tau*b0 = c` with `deg(sigma) < deg(b0)` given a Bezout
/// identity `s*a0 + t*b0 = 1`, all over `Z_p` modulo the prefix set. When
/// `deg(c) < deg(a0) + deg(b0)` the degree bound `deg(tau) < deg(a0)` holds
/// automatically.
pub fn diophantine_solve(
    a0: &RPoly,
    b0: &RPoly,
    s: &RPoly,
    t: &RPoly,
    c: &RPoly,
    prefix: &TriangularSet,
) -> (RPoly, RPoly) {
    let gens = prefix.gens();
    let cs = mul_mod_in(c, s, gens);
    let (q, sigma) = div_rem_core(&cs, b0, gens);
    let tau = normal_form(&ring::add(&mul_raw(c, t), &mul_raw(&q, a0)), gens);
    (sigma, tau)
}

/// Lifts `f = a0 * b0 (mod p)` to a monic factorization of `f` over `Q`.
///
/// `f` lives over `Q` modulo the rational prefix set; `a0`, `b0` are monic
/// and coprime modulo `p`. Every iteration first tries rational
/// reconstruction of the current factor and certifies a candidate by exact
/// trial division, so a returned factorization is always correct; `Fail`
/// is returned once `p^i > 2B`. Precondition violations surface as `Fail`,
/// never as wrong answers.
pub fn hensel_lift(
    f: &RPoly,
    a0: &RPoly,
    b0: &RPoly,
    prefix_q: &TriangularSet,
    p: u64,
    bound: &BigInt,
) -> LiftOutcome {
    let gens_q = prefix_q.gens();
    let gens_p = match project_gens(gens_q, p) {
        Ok(g) => g,
        Err(_) => return LiftOutcome::Fail,
    };
    let v_level = gens_q.len() + 1;
    if a0.deg_in(v_level) == 0 || b0.deg_in(v_level) == 0 {
        return LiftOutcome::Fail;
    }
    if !a0.is_monic_in(v_level) || !b0.is_monic_in(v_level) {
        return LiftOutcome::Fail;
    }

    let (_, s, t) = match extended_euclidean_in(a0, b0, &gens_p) {
        EeaOrZd::Zd(sig) => return LiftOutcome::ZeroDivisor(sig),
        EeaOrZd::Eea { g, s, t } => {
            if !g.is_one() {
                return LiftOutcome::Fail;
            }
            (g, s, t)
        }
    };

    let mut state = HenselState {
        u: lift_to_q(a0),
        v: lift_to_q(b0),
        s,
        t,
        modulus: BigInt::from(p),
        bound: bound.clone(),
    };
    let two_b = bound * 2;

    loop {
        if let Some(cand) = rational_reconstruct_poly(&state.u, &state.modulus) {
            if cand.is_monic_in(v_level) {
                let (q, r) = div_rem_core(f, &cand, gens_q);
                if r.is_zero() {
                    return LiftOutcome::Lifted { u: cand, v: q };
                }
            }
        }
        if state.modulus > two_b {
            return LiftOutcome::Fail;
        }
        let prod = mul_mod_in(&state.u, &state.v, gens_q);
        let e = ring::sub(f, &prod);
        let c = match exact_div_project(&e, &state.modulus, p) {
            Some(c) => c,
            None => return LiftOutcome::Fail,
        };
        if !c.is_zero() {
            let prefix_p = TriangularSet::new(gens_p.clone()).expect("projected prefix");
            let (sigma, tau) = diophantine_solve(a0, b0, &state.s, &state.t, &c, &prefix_p);
            state.u = ring::add(&state.u, &scale_bigint(&lift_to_q(&tau), &state.modulus));
            state.v = ring::add(&state.v, &scale_bigint(&lift_to_q(&sigma), &state.modulus));
            // the degree bounds of the diophantine solution keep both
            // factors monic through every update
            debug_assert!(state.u.is_monic_in(v_level) && state.v.is_monic_in(v_level));
        }
        state.modulus *= p;
    }
}

fn project_gens(gens: &[RPoly], p: u64) -> Result<Vec<RPoly>, Error> {
    gens.iter().map(|g| project_mod_p(g, p)).collect()
}

fn scale_bigint(a: &RPoly, m: &BigInt) -> RPoly {
    ring::scale(a, &Coeff::Rat(BigRational::from_integer(m.clone())))
}

/// Divides every coefficient of `e` by `p^i` exactly and projects modulo
/// `p`. `None` when a denominator is divisible by `p` or a numerator is not
/// divisible by `p^i`; both indicate a violated precondition.
fn exact_div_project(e: &RPoly, p_i: &BigInt, p: u64) -> Option<RPoly> {
    match e {
        RPoly::Const(Coeff::Rat(r)) => {
            let den = mod_residue(r.denom(), p);
            if den == 0 {
                return None;
            }
            let (quot, rem) = num_integer::Integer::div_rem(r.numer(), p_i);
            if !rem.is_zero() {
                return None;
            }
            let val = mulmod(mod_residue(&quot, p), powmod(den, p - 2, p), p);
            Some(RPoly::Const(Coeff::Mod { val, prime: p }))
        }
        RPoly::Const(Coeff::Mod { .. }) => panic!("error polynomial must be rational"),
        RPoly::Poly { level, coeffs } => {
            let mut out = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                out.push(exact_div_project(c, p_i, p)?);
            }
            Some(from_coeffs(*level, out))
        }
    }
}

/// Resolves a monic zero-divisor modulo `p` into a factorization of the
/// corresponding generator over `Q`, following deeper zero-divisors as they
/// appear (with a recursion cap as a safety net).
pub fn handle_zero_divisor(
    t_q: &TriangularSet,
    p: u64,
    sig: &ZdSignal,
    bounds: &mut BoundSchedule,
) -> Result<SplitOutcome, Error> {
    let mut sig = sig.clone();
    for _ in 0..DEEPER_ZD_CAP {
        match handle_zero_divisor_step(t_q, p, &sig, bounds)? {
            SplitOutcome::DeeperZd(deeper) => sig = deeper,
            done => return Ok(done),
        }
    }
    Ok(SplitOutcome::Fail)
}

/// One resolution attempt: divides `t_k` by the witness (replacing the
/// witness by `gcd(witness, t_k)` when it does not divide), then lifts the
/// factorization with the next bound from the schedule.
pub fn handle_zero_divisor_step(
    t_q: &TriangularSet,
    p: u64,
    sig: &ZdSignal,
    bounds: &mut BoundSchedule,
) -> Result<SplitOutcome, Error> {
    let k = sig.level;
    let tk_q = t_q.gen(k);
    let prefix_q = TriangularSet::new(t_q.prefix(k - 1).to_vec())?;
    let gens_p = project_gens(prefix_q.gens(), p)?;
    let tk_p = project_mod_p(tk_q, p)?;
    let mut u0 = normal_form(&sig.witness, &gens_p);

    let (q, r) = div_rem_core(&tk_p, &u0, &gens_p);
    let v0 = if r.is_zero() {
        q
    } else {
        match monic_euclidean_in(&tk_p, &u0, &gens_p) {
            GcdOrZd::Zd(deeper) => return Ok(SplitOutcome::DeeperZd(deeper)),
            GcdOrZd::Gcd(g) => {
                if g.is_one() || g.deg_in(k) == tk_p.deg_in(k) {
                    return Ok(SplitOutcome::Fail);
                }
                u0 = g;
                let (q2, r2) = div_rem_core(&tk_p, &u0, &gens_p);
                debug_assert!(r2.is_zero());
                q2
            }
        }
    };
    if u0.deg_in(k) == 0 || v0.deg_in(k) == 0 {
        return Ok(SplitOutcome::Fail);
    }

    let b = bounds.next_bound();
    match hensel_lift(tk_q, &u0, &v0, &prefix_q, p, &b) {
        LiftOutcome::ZeroDivisor(deeper) => Ok(SplitOutcome::DeeperZd(deeper)),
        LiftOutcome::Fail => Ok(SplitOutcome::Fail),
        LiftOutcome::Lifted { u, v } => Ok(SplitOutcome::Split { level: k, u, v }),
    }
}

/// Recovers the unique rational `n/d` with `n = c*d (mod m)`,
/// `gcd(d, m) = 1` and `|n|, d <= sqrt(m/2)`, or `None` when no such
/// fraction exists (meaning more primes are needed).
pub fn rational_reconstruction(c: &BigInt, m: &BigInt) -> Option<BigRational> {
    debug_assert!(!c.is_negative() && c < m);
    let limit = (m / 2u8).sqrt();
    let mut r0 = m.clone();
    let mut t0 = BigInt::zero();
    let mut r1 = c.clone();
    let mut t1 = BigInt::one();
    while r1 > limit {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let d = t1.abs();
    if d > limit {
        return None;
    }
    if num_integer::gcd(r1.clone(), t1.clone()).abs() != BigInt::one() {
        return None;
    }
    let n = if t1.is_negative() { -r1 } else { r1 };
    Some(BigRational::new(n, d))
}

/// Coefficient-wise rational reconstruction of a polynomial with integer
/// coefficients in `[0, m)`.
pub fn rational_reconstruct_poly(g: &RPoly, m: &BigInt) -> Option<RPoly> {
    match g {
        RPoly::Const(Coeff::Rat(r)) => {
            debug_assert!(r.denom().is_one());
            let q = rational_reconstruction(r.numer(), m)?;
            Some(RPoly::Const(Coeff::Rat(q)))
        }
        RPoly::Const(Coeff::Mod { .. }) => panic!("reconstruction needs integer coefficients"),
        RPoly::Poly { level, coeffs } => {
            let mut out = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                out.push(rational_reconstruct_poly(c, m)?);
            }
            Some(from_coeffs(*level, out))
        }
    }
}

/// Combines `g1 (mod m1)` with `g2 (mod p)` coefficient-wise into a
/// polynomial with integer coefficients in `[0, m1*p)`. The top-level
/// degrees must agree; missing lower coefficients count as zero.
pub fn crt_combine(g1: &RPoly, m1: &BigInt, g2: &RPoly, p: u64) -> Result<RPoly, Error> {
    let l = g1.level().max(g2.level());
    if l > 0 && g1.deg_in(l) != g2.deg_in(l) {
        return Err(Error::ShapeMismatch);
    }
    let m1_inv = powmod(mod_residue(m1, p), p - 2, p);
    Ok(crt_walk(g1, g2, m1, p, m1_inv))
}

fn crt_walk(g1: &RPoly, g2: &RPoly, m1: &BigInt, p: u64, m1_inv: u64) -> RPoly {
    let l = g1.level().max(g2.level());
    if l == 0 {
        let c1 = match g1 {
            RPoly::Const(Coeff::Rat(r)) => {
                debug_assert!(r.denom().is_one());
                r.numer().clone()
            }
            _ => panic!("combined image must have integer coefficients"),
        };
        let c2 = match g2 {
            RPoly::Const(Coeff::Mod { val, .. }) => *val,
            RPoly::Const(Coeff::Rat(_)) => panic!("new image must be modular"),
            _ => unreachable!(),
        };
        // Garner step: x = c1 + m1 * ((c2 - c1) * m1^{-1} mod p)
        let c1_mod = mod_residue(&c1, p);
        let diff = (c2 + p - c1_mod) % p;
        let t = mulmod(diff, m1_inv, p);
        return RPoly::Const(Coeff::Rat(BigRational::from_integer(c1 + m1 * t)));
    }
    let v1 = g1.view(l);
    let v2 = g2.view(l);
    let n = v1.len().max(v2.len());
    let z1 = g1.field_zero();
    let z2 = g2.field_zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = v1.get(i).unwrap_or(&z1);
        let b = v2.get(i).unwrap_or(&z2);
        out.push(crt_walk(a, b, m1, p, m1_inv));
    }
    from_coeffs(l, out)
}
