//! Recursive dense polynomial arithmetic over `Q` or `Z_p`, reduction modulo
//! a triangular set, and the delayed-reduction division scheme whose base
//! field multiplication count is exact in the dense case.
//!
//! Variables are identified by *levels*: level `0` is a base-field constant,
//! level `i` (for `1 <= i <= n`) is the algebraic variable `z_i` governed by
//! the generator `t_i` of the triangular set, and any level above `n` is a
//! free polynomial variable (conventionally printed as `x`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cell::Cell;
use std::slice;

use crate::Error;

// ---------------------------------------------------------------------------
// instrumentation
// ---------------------------------------------------------------------------

thread_local! {
    static MUL_COUNT: Cell<Option<u64>> = const { Cell::new(None) };
}

/// Runs `f` with the base-field multiplication counter enabled and returns
/// the result together with the number of coefficient multiplications
/// performed. Only multiplications are counted, never additions.
///
/// The counter is confined to the current thread and must not be nested.
pub fn with_mul_count<T>(f: impl FnOnce() -> T) -> (T, u64) {
    MUL_COUNT.with(|c| c.set(Some(0)));
    let out = f();
    let n = MUL_COUNT.with(|c| c.replace(None)).unwrap_or(0);
    (out, n)
}

#[inline]
fn bump_mul() {
    MUL_COUNT.with(|c| {
        if let Some(n) = c.get() {
            c.set(Some(n + 1));
        }
    });
}

// ---------------------------------------------------------------------------
// coefficients
// ---------------------------------------------------------------------------

/// A base-field element: an arbitrary-precision rational (always in lowest
/// terms with positive denominator) or a prime-field residue in `[0, p)`
/// tagged with its prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coeff {
    Rat(BigRational),
    Mod { val: u64, prime: u64 },
}

impl Coeff {
    pub fn from_int(n: i64) -> Coeff {
        Coeff::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rat(n: i64, d: i64) -> Coeff {
        Coeff::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn modp(val: u64, prime: u64) -> Coeff {
        Coeff::Mod {
            val: val % prime,
            prime,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Mod { val, .. } => *val == 1,
        }
    }

    pub fn zero_like(&self) -> Coeff {
        match self {
            Coeff::Rat(_) => Coeff::Rat(BigRational::zero()),
            Coeff::Mod { prime, .. } => Coeff::Mod {
                val: 0,
                prime: *prime,
            },
        }
    }

    pub fn one_like(&self) -> Coeff {
        match self {
            Coeff::Rat(_) => Coeff::Rat(BigRational::one()),
            Coeff::Mod { prime, .. } => Coeff::Mod {
                val: 1,
                prime: *prime,
            },
        }
    }

    /// Embeds a small nonnegative integer into the same field as `self`.
    pub fn from_usize_like(&self, n: usize) -> Coeff {
        match self {
            Coeff::Rat(_) => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
            Coeff::Mod { prime, .. } => Coeff::Mod {
                val: (n as u64) % *prime,
                prime: *prime,
            },
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Mod { val: a, prime: p }, Coeff::Mod { val: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Coeff::Mod {
                    val: (a + b) % p,
                    prime: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Mod { val, prime } => Coeff::Mod {
                val: (prime - val) % prime,
                prime: *prime,
            },
        }
    }

    /// Field multiplication. Counts one multiplication when the
    /// instrumentation counter is enabled.
    pub fn mul(&self, other: &Coeff) -> Coeff {
        bump_mul();
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Mod { val: a, prime: p }, Coeff::Mod { val: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Coeff::Mod {
                    val: mulmod(*a, *b, *p),
                    prime: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Coeff> {
        match self {
            Coeff::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(a.recip()))
                }
            }
            Coeff::Mod { val, prime } => {
                if *val == 0 {
                    None
                } else {
                    Some(Coeff::Mod {
                        val: powmod(*val, *prime - 2, *prime),
                        prime: *prime,
                    })
                }
            }
        }
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

/// Recursive dense polynomial. A value is either a base-field constant or a
/// dense coefficient vector at some level, indexed by exponent.
///
/// Canonical form invariants:
/// * the leading (last) entry of `coeffs` is nonzero;
/// * `coeffs.len() >= 2`, a degree-0 vector collapses to its constant;
/// * every entry has a strictly smaller level.
///
/// Because of these invariants two polynomials are mathematically equal
/// as reduced representatives iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RPoly {
    Const(Coeff),
    Poly { level: usize, coeffs: Vec<RPoly> },
}

impl RPoly {
    pub fn constant(c: Coeff) -> RPoly {
        RPoly::Const(c)
    }

    pub fn int(n: i64) -> RPoly {
        RPoly::Const(Coeff::from_int(n))
    }

    /// The variable `z_level` (or the free variable for levels above the
    /// triangular set) over the same field as `sample`.
    pub fn var(level: usize, sample: &Coeff) -> RPoly {
        assert!(level >= 1);
        RPoly::Poly {
            level,
            coeffs: vec![
                RPoly::Const(sample.zero_like()),
                RPoly::Const(sample.one_like()),
            ],
        }
    }

    pub fn level(&self) -> usize {
        match self {
            RPoly::Const(_) => 0,
            RPoly::Poly { level, .. } => *level,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RPoly::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, RPoly::Const(c) if c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, RPoly::Const(_))
    }

    /// Degree in the main (own-level) variable; `None` for the zero
    /// polynomial, `Some(0)` for nonzero constants.
    pub fn degree(&self) -> Option<usize> {
        match self {
            RPoly::Const(c) => {
                if c.is_zero() {
                    None
                } else {
                    Some(0)
                }
            }
            RPoly::Poly { coeffs, .. } => Some(coeffs.len() - 1),
        }
    }

    /// Degree viewed in the variable of level `l` (0 if the variable does
    /// not occur at the top of the tree).
    pub fn deg_in(&self, l: usize) -> usize {
        match self {
            RPoly::Poly { level, coeffs } if *level == l => coeffs.len() - 1,
            _ => 0,
        }
    }

    /// Coefficient view in the variable of level `l`. A polynomial of lower
    /// level is a single degree-0 coefficient.
    pub(crate) fn view(&self, l: usize) -> &[RPoly] {
        match self {
            RPoly::Poly { level, coeffs } if *level == l => coeffs,
            _ => slice::from_ref(self),
        }
    }

    /// Leading coefficient in the variable of level `l`.
    pub fn lc_in(&self, l: usize) -> RPoly {
        self.view(l).last().unwrap().clone()
    }

    pub fn is_monic_in(&self, l: usize) -> bool {
        self.view(l).last().unwrap().is_one()
    }

    /// Largest degree of the level-`l` variable anywhere in the tree.
    pub fn max_deg_in(&self, l: usize) -> usize {
        match self {
            RPoly::Const(_) => 0,
            RPoly::Poly { level, coeffs } => {
                if *level == l {
                    coeffs.len() - 1
                } else if *level < l {
                    0
                } else {
                    coeffs.iter().map(|c| c.max_deg_in(l)).max().unwrap_or(0)
                }
            }
        }
    }

    /// A zero constant over the same field.
    pub fn field_zero(&self) -> RPoly {
        RPoly::Const(self.leading_base_coeff().zero_like())
    }

    /// A one constant over the same field.
    pub fn field_one(&self) -> RPoly {
        RPoly::Const(self.leading_base_coeff().one_like())
    }

    pub(crate) fn leading_base_coeff(&self) -> &Coeff {
        match self {
            RPoly::Const(c) => c,
            RPoly::Poly { coeffs, .. } => coeffs.last().unwrap().leading_base_coeff(),
        }
    }

    /// `Some(p)` when the coefficients live in `Z_p`, `None` over `Q`.
    pub fn prime(&self) -> Option<u64> {
        match self.leading_base_coeff() {
            Coeff::Rat(_) => None,
            Coeff::Mod { prime, .. } => Some(*prime),
        }
    }

    /// Extracts the base-field constant; panics on non-constants.
    pub fn as_coeff(&self) -> &Coeff {
        match self {
            RPoly::Const(c) => c,
            _ => panic!("polynomial is not a constant"),
        }
    }
}

/// Builds a canonical polynomial at `level` from a dense coefficient vector,
/// stripping leading zeros and collapsing degree-0 results.
pub fn from_coeffs(level: usize, mut coeffs: Vec<RPoly>) -> RPoly {
    assert!(!coeffs.is_empty());
    debug_assert!(coeffs.iter().all(|c| c.level() < level));
    let zero = coeffs[0].field_zero();
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    if coeffs.len() == 1 {
        let only = coeffs.pop().unwrap();
        if only.is_zero() {
            zero
        } else {
            only
        }
    } else {
        RPoly::Poly { level, coeffs }
    }
}

// ---------------------------------------------------------------------------
// exact arithmetic (no reduction)
// ---------------------------------------------------------------------------

/// Exact sum. Panics on mixed coefficient fields.
pub fn add(a: &RPoly, b: &RPoly) -> RPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if let (RPoly::Const(x), RPoly::Const(y)) = (a, b) {
        return RPoly::Const(x.add(y));
    }
    let l = a.level().max(b.level());
    let av = a.view(l);
    let bv = b.view(l);
    let n = av.len().max(bv.len());
    let zero = a.field_zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = match (av.get(i), bv.get(i)) {
            (Some(x), Some(y)) => add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => zero.clone(),
        };
        out.push(c);
    }
    from_coeffs(l, out)
}

/// Exact negation.
pub fn neg(a: &RPoly) -> RPoly {
    match a {
        RPoly::Const(c) => RPoly::Const(c.neg()),
        RPoly::Poly { level, coeffs } => RPoly::Poly {
            level: *level,
            coeffs: coeffs.iter().map(neg).collect(),
        },
    }
}

/// Exact difference.
pub fn sub(a: &RPoly, b: &RPoly) -> RPoly {
    add(a, &neg(b))
}

/// Exact product with no reduction by any triangular set. Each pair of base
/// coefficients is multiplied exactly once; zero operands are skipped.
pub fn mul_raw(a: &RPoly, b: &RPoly) -> RPoly {
    if a.is_zero() || b.is_zero() {
        return a.field_zero();
    }
    if let (RPoly::Const(x), RPoly::Const(y)) = (a, b) {
        return RPoly::Const(x.mul(y));
    }
    let l = a.level().max(b.level());
    let av = a.view(l);
    let bv = b.view(l);
    let zero = a.field_zero();
    let mut acc = vec![zero; av.len() + bv.len() - 1];
    for (i, ai) in av.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in bv.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            acc[i + j] = add(&acc[i + j], &mul_raw(ai, bj));
        }
    }
    from_coeffs(l, acc)
}

/// Multiplies every base coefficient by `c`.
pub(crate) fn scale(a: &RPoly, c: &Coeff) -> RPoly {
    if c.is_one() {
        return a.clone();
    }
    match a {
        RPoly::Const(x) => RPoly::Const(x.mul(c)),
        RPoly::Poly { level, coeffs } => from_coeffs(
            *level,
            coeffs
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { scale(x, c) })
                .collect(),
        ),
    }
}

/// Derivative with respect to the main variable of `f`.
pub(crate) fn derivative_main(f: &RPoly) -> RPoly {
    match f {
        RPoly::Const(c) => RPoly::Const(c.zero_like()),
        RPoly::Poly { level, coeffs } => {
            let sample = f.leading_base_coeff();
            let mut out = Vec::with_capacity(coeffs.len() - 1);
            for (k, c) in coeffs.iter().enumerate().skip(1) {
                out.push(scale(c, &sample.from_usize_like(k)));
            }
            from_coeffs(*level, out)
        }
    }
}

// ---------------------------------------------------------------------------
// reduction modulo a triangular set
// ---------------------------------------------------------------------------

/// Normal form of `f` modulo the generators `gens` (generator `i` governs
/// level `i+1`). Levels above `gens.len()` are free variables whose
/// coefficients are reduced recursively. Total and idempotent.
pub(crate) fn normal_form(f: &RPoly, gens: &[RPoly]) -> RPoly {
    match f {
        RPoly::Const(_) => f.clone(),
        RPoly::Poly { level, coeffs } => {
            let l = *level;
            if l > gens.len() {
                from_coeffs(l, coeffs.iter().map(|c| normal_form(c, gens)).collect())
            } else {
                let t = &gens[l - 1];
                let d = t.deg_in(l);
                if coeffs.len() - 1 < d {
                    let pre = &gens[..l - 1];
                    from_coeffs(l, coeffs.iter().map(|c| normal_form(c, pre)).collect())
                } else {
                    div_rem_core(f, t, gens).1
                }
            }
        }
    }
}

/// Division with remainder by a divisor monic in its main variable, using
/// the delayed-reduction scheme: for every defining equation of the
/// quotient/remainder linear system, the right-hand side is accumulated as
/// an unreduced product sum and reduced exactly once.
///
/// `gens` are the generators below the divisor's level (a longer slice is
/// sliced down automatically).
pub(crate) fn div_rem_core(a: &RPoly, b: &RPoly, gens: &[RPoly]) -> (RPoly, RPoly) {
    debug_assert!(!b.is_zero(), "division by zero polynomial");
    if b.is_one() {
        let r = a.field_zero();
        return (normal_form(a, gens), r);
    }
    let v = b.level();
    debug_assert!(v >= 1, "divisor must be monic and non-constant");
    debug_assert!(
        b.is_monic_in(v),
        "divisor must be monic in its main variable"
    );
    let gens = &gens[..gens.len().min(v - 1)];
    let zero = b.field_zero();
    if a.is_zero() {
        return (zero.clone(), zero);
    }
    debug_assert!(
        a.level() <= v,
        "dividend has a higher main variable than the divisor"
    );
    let bv = b.view(v);
    let d = bv.len() - 1;
    let av = a.view(v);
    let m = av.len() - 1;
    if a.level() < v || m < d {
        return (zero, normal_form(a, gens));
    }
    let mut q: Vec<RPoly> = vec![zero.clone(); m - d + 1];
    let mut r: Vec<RPoly> = vec![zero; d];
    for k in (0..=m).rev() {
        let mut acc = av[k].clone();
        let i_lo = (k + 1).saturating_sub(d);
        let i_hi = (m - d).min(k);
        for (i, qi) in q.iter().enumerate().take(i_hi + 1).skip(i_lo) {
            let j = k - i;
            if qi.is_zero() || bv[j].is_zero() {
                continue;
            }
            acc = sub(&acc, &mul_raw(qi, &bv[j]));
        }
        let red = normal_form(&acc, gens);
        if k >= d {
            q[k - d] = red;
        } else {
            r[k] = red;
        }
    }
    (from_coeffs(v, q), from_coeffs(v, r))
}

pub(crate) fn mul_mod_in(a: &RPoly, b: &RPoly, gens: &[RPoly]) -> RPoly {
    normal_form(&mul_raw(a, b), gens)
}

// ---------------------------------------------------------------------------
// triangular sets
// ---------------------------------------------------------------------------

/// An ordered triangular set `t_1, ..., t_n` with `mvar(t_i) = z_i`, each
/// generator monic in its main variable and reduced with respect to the
/// earlier ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TriangularSet {
    gens: Vec<RPoly>,
}

impl TriangularSet {
    /// Validates the defining conditions and builds the set. The error
    /// message names the violated condition.
    pub fn new(gens: Vec<RPoly>) -> Result<TriangularSet, Error> {
        for (idx, t) in gens.iter().enumerate() {
            let i = idx + 1;
            if t.level() != i {
                return Err(Error::InvalidTriangularSet(format!(
                    "generator {i} must be non-constant with main variable z{i}"
                )));
            }
            if !t.is_monic_in(i) {
                return Err(Error::InvalidTriangularSet(format!(
                    "generator {i} must be monic in z{i}"
                )));
            }
            for (jdx, tj) in gens.iter().enumerate().take(idx) {
                let j = jdx + 1;
                let dj = tj.deg_in(j);
                if t.max_deg_in(j) >= dj {
                    return Err(Error::InvalidTriangularSet(format!(
                        "generator {i} must have degree below {dj} in z{j}"
                    )));
                }
            }
            if idx > 0 && gens[0].prime() != t.prime() {
                return Err(Error::InvalidTriangularSet(
                    "generators lie over different coefficient fields".into(),
                ));
            }
        }
        Ok(TriangularSet { gens })
    }

    pub fn empty() -> TriangularSet {
        TriangularSet { gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[RPoly] {
        &self.gens
    }

    /// Generator `t_i` (1-based).
    pub fn gen(&self, i: usize) -> &RPoly {
        &self.gens[i - 1]
    }

    /// Main degree of `t_i` (1-based).
    pub fn mdeg(&self, i: usize) -> usize {
        self.gens[i - 1].deg_in(i)
    }

    /// The prefix `T_k = {t_1, ..., t_k}` as a generator slice.
    pub fn prefix(&self, k: usize) -> &[RPoly] {
        &self.gens[..k]
    }

    /// Product of the main degrees; 1 for the empty set.
    pub fn degree(&self) -> u128 {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, t)| t.deg_in(i + 1) as u128)
            .product()
    }

    /// `Some(p)` when the generators lie over `Z_p`; `None` over `Q` or for
    /// the empty set.
    pub fn prime(&self) -> Option<u64> {
        self.gens.first().and_then(|g| g.prime())
    }
}

// ---------------------------------------------------------------------------
// public reduced arithmetic
// ---------------------------------------------------------------------------

/// Normal form of `a` modulo the ideal generated by `t`: every algebraic
/// variable `z_i` is reduced below `mdeg(t_i)`, free variables keep their
/// degrees. Idempotent and total on well-formed inputs.
pub fn reduce(a: &RPoly, t: &TriangularSet) -> RPoly {
    normal_form(a, t.gens())
}

/// Reduced product `a * b mod <T>`. For instrumentation purposes the inputs
/// are expected to be reduced; the count of base-field multiplications is
/// then exact in the dense case and at most `3 * degree(T)^2` always.
pub fn mul_mod(a: &RPoly, b: &RPoly, t: &TriangularSet) -> RPoly {
    mul_mod_in(a, b, t.gens())
}

/// Division with remainder in the main variable of `b`, which must be monic
/// (otherwise `NonMonicDivisor`). Returns `(q, r)` with
/// `a = q*b + r mod <T>` and `r` zero or of smaller degree, all coefficients
/// reduced.
pub fn div_rem(a: &RPoly, b: &RPoly, t: &TriangularSet) -> Result<(RPoly, RPoly), Error> {
    if b.is_zero() {
        return Err(Error::NonMonicDivisor);
    }
    if b.is_constant() {
        if b.is_one() {
            return Ok((reduce(a, t), b.field_zero()));
        }
        return Err(Error::NonMonicDivisor);
    }
    let v = b.level();
    if !b.is_monic_in(v) {
        return Err(Error::NonMonicDivisor);
    }
    assert!(
        a.level() <= v,
        "dividend has a higher main variable than the divisor"
    );
    Ok(div_rem_core(a, b, t.gens()))
}

// ---------------------------------------------------------------------------
// multiplication cost model
// ---------------------------------------------------------------------------

/// Degree profile of a triangular set together with its partial degree
/// products, used to evaluate the closed-form dense multiplication count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulCostModel {
    degrees: Vec<u64>,
    partials: Vec<u128>,
}

impl MulCostModel {
    pub fn new(degrees: Vec<u64>) -> Result<MulCostModel, Error> {
        if degrees.contains(&0) {
            return Err(Error::InvalidTriangularSet(
                "main degrees must be at least 1".into(),
            ));
        }
        let mut partials = Vec::with_capacity(degrees.len() + 1);
        partials.push(1u128);
        for &d in &degrees {
            let last = *partials.last().unwrap();
            partials.push(
                last.checked_mul(d as u128)
                    .expect("degree product overflow"),
            );
        }
        Ok(MulCostModel { degrees, partials })
    }

    pub fn for_tset(t: &TriangularSet) -> MulCostModel {
        MulCostModel::new((1..=t.len()).map(|i| t.mdeg(i) as u64).collect()).unwrap()
    }

    /// Total extension degree `delta`.
    pub fn degree(&self) -> u128 {
        *self.partials.last().unwrap()
    }
}

/// Exact dense-case count of base-field multiplications for one reduced
/// product: `delta^2` for the coefficient products plus the reduction cost
/// `D(n)` given by `D(k) = (2 d_k - 1) D(k-1) + d_k (d_k - 1) delta_{k-1}^2`
/// with `D(0) = 0`. Always at most `3 * delta^2`.
pub fn mul_cost_bound(model: &MulCostModel) -> u128 {
    let mut d_cost = 0u128;
    for (k, &dk) in model.degrees.iter().enumerate() {
        let dk = dk as u128;
        let delta_prev = model.partials[k];
        d_cost = (2 * dk - 1) * d_cost + dk * (dk - 1) * delta_prev * delta_prev;
    }
    let delta = model.degree();
    delta * delta + d_cost
}

// ---------------------------------------------------------------------------
// conversions used by the number-theoretic layers
// ---------------------------------------------------------------------------

/// Least common multiple of all coefficient denominators (1 over `Z_p`).
pub fn denominator_lcm(f: &RPoly) -> BigInt {
    fn walk(f: &RPoly, acc: &mut BigInt) {
        match f {
            RPoly::Const(Coeff::Rat(r)) => {
                let d = r.denom();
                if !d.is_one() {
                    *acc = num_integer::lcm(acc.clone(), d.clone());
                }
            }
            RPoly::Const(Coeff::Mod { .. }) => {}
            RPoly::Poly { coeffs, .. } => {
                for c in coeffs {
                    walk(c, acc);
                }
            }
        }
    }
    let mut acc = BigInt::one();
    walk(f, &mut acc);
    acc.abs()
}

/// Maps every rational coefficient `n/d` to `n * d^{-1} mod p`; fails with
/// `BadPrime` when `p` divides some denominator.
pub fn project_mod_p(a: &RPoly, p: u64) -> Result<RPoly, Error> {
    match a {
        RPoly::Const(Coeff::Rat(r)) => {
            let den = mod_residue(r.denom(), p);
            if den == 0 {
                return Err(Error::BadPrime(p));
            }
            let num = mod_residue(r.numer(), p);
            let val = mulmod(num, powmod(den, p - 2, p), p);
            Ok(RPoly::Const(Coeff::Mod { val, prime: p }))
        }
        RPoly::Const(Coeff::Mod { .. }) => panic!("projection of a prime-field polynomial"),
        RPoly::Poly { level, coeffs } => {
            let mut out = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                out.push(project_mod_p(c, p)?);
            }
            Ok(from_coeffs(*level, out))
        }
    }
}

pub(crate) fn mod_residue(n: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = n % &p_big;
    if r.sign() == num_bigint::Sign::Minus {
        r += &p_big;
    }
    r.to_u64().unwrap()
}

/// Lifts a prime-field polynomial to integer coefficients in `[0, p)`.
pub(crate) fn lift_to_q(a: &RPoly) -> RPoly {
    match a {
        RPoly::Const(Coeff::Mod { val, .. }) => {
            RPoly::Const(Coeff::Rat(BigRational::from_integer(BigInt::from(*val))))
        }
        RPoly::Const(Coeff::Rat(_)) => panic!("lift of a rational polynomial"),
        RPoly::Poly { level, coeffs } => {
            from_coeffs(*level, coeffs.iter().map(lift_to_q).collect())
        }
    }
}
