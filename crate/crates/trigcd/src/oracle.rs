//! Naive reference implementations: a fraction-arithmetic Euclidean
//! componentwise gcd over `Q` with recursive splitting, and the iterated
//! resultant as a zero-divisor decision procedure.
//!
//! Everything here favours auditability over speed and is meant for tests,
//! cross-checks and small inputs.

use crate::cgcd::{split_tset, CGcdResult, Component};
use crate::modp::{inv_mod, monic_euclidean_in, GcdOrZd, UnitOrZd, ZdSignal};
use crate::ring::{self, div_rem_core, from_coeffs, mul_raw, reduce, Coeff, RPoly, TriangularSet};
use crate::Error;

const SPLIT_DEPTH_CAP: usize = 64;

/// Componentwise gcd over `Q` by the monic Euclidean algorithm. Whenever a
/// zero-divisor is met, the triangular set is split through an exact gcd
/// with the offending generator and both branches are finished recursively.
pub fn euclid_q_cgcd(a: &RPoly, b: &RPoly, t: &TriangularSet) -> Result<CGcdResult, Error> {
    let mut components = Vec::new();
    descend(a, b, t.clone(), &mut components, 0)?;
    Ok(CGcdResult { components })
}

fn descend(
    a: &RPoly,
    b: &RPoly,
    t: TriangularSet,
    out: &mut Vec<Component>,
    depth: usize,
) -> Result<(), Error> {
    if depth > SPLIT_DEPTH_CAP {
        return Err(Error::ResourceLimit("splitting recursion too deep".into()));
    }
    let ar = reduce(a, &t);
    let br = reduce(b, &t);
    if ar.is_zero() && br.is_zero() {
        out.push(Component { tset: t, gcd: ar });
        return Ok(());
    }
    match monic_euclidean_in(&ar, &br, t.gens()) {
        GcdOrZd::Gcd(g) => {
            out.push(Component { tset: t, gcd: g });
            Ok(())
        }
        GcdOrZd::Zd(sig) => {
            let (tu, tv) = resolve_zd_q(&t, &sig)?;
            descend(a, b, tu, out, depth + 1)?;
            descend(a, b, tv, out, depth + 1)
        }
    }
}

/// Turns a zero-divisor over `Q` into a split of the triangular set by
/// computing `u = gcd(witness, t_k)` exactly and dividing `t_k` by it. A
/// deeper zero-divisor met along the way restarts the resolution there.
pub fn resolve_zd_q(
    t: &TriangularSet,
    sig: &ZdSignal,
) -> Result<(TriangularSet, TriangularSet), Error> {
    let mut sig = sig.clone();
    for _ in 0..SPLIT_DEPTH_CAP {
        let k = sig.level;
        let tk = t.gen(k);
        let prefix = t.prefix(k - 1);
        match monic_euclidean_in(tk, &sig.witness, prefix) {
            GcdOrZd::Zd(deeper) => sig = deeper,
            GcdOrZd::Gcd(u) => {
                if u.is_one() || u.deg_in(k) == tk.deg_in(k) {
                    return Err(Error::InvalidFactorization(
                        "witness does not yield a proper factor".into(),
                    ));
                }
                let (v, rem) = div_rem_core(tk, &u, prefix);
                debug_assert!(rem.is_zero());
                return split_tset(t, k, &u, &v);
            }
        }
    }
    Err(Error::ResourceLimit(
        "zero-divisor resolution too deep".into(),
    ))
}

/// Outcome of an inversion attempt over `Q`.
#[derive(Clone, Debug)]
pub enum InvQOutcome {
    Inverse(RPoly),
    ZeroDivisor {
        signal: ZdSignal,
        split: (TriangularSet, TriangularSet),
    },
}

/// Inverts `u` over `Q` via the splitting Euclidean algorithm; a
/// zero-divisor is reported together with the split it induces.
pub fn inv_q(u: &RPoly, t: &TriangularSet) -> Result<InvQOutcome, Error> {
    match inv_mod(u, t)? {
        UnitOrZd::Unit(v) => Ok(InvQOutcome::Inverse(v)),
        UnitOrZd::Zd(signal) => {
            let split = resolve_zd_q(t, &signal)?;
            Ok(InvQOutcome::ZeroDivisor { signal, split })
        }
    }
}

/// Iterated resultant of `f` against the whole set: resultants are taken in
/// `z_n, z_{n-1}, ..., z_1` on unreduced representatives. The value is zero
/// exactly when `f` is a zero-divisor modulo `<T>`.
pub fn iterres(f: &RPoly, t: &TriangularSet) -> Coeff {
    let mut val = f.clone();
    for i in (1..=t.len()).rev() {
        val = resultant(&val, t.gen(i), i);
        if val.is_zero() {
            return val.as_coeff().clone();
        }
    }
    debug_assert!(
        val.is_constant(),
        "iterated resultant did not eliminate all variables"
    );
    val.as_coeff().clone()
}

/// True iff `iterres(f, T) = 0`.
pub fn is_zero_divisor(f: &RPoly, t: &TriangularSet) -> bool {
    debug_assert!(!reduce(f, t).is_zero(), "zero is not a zero-divisor");
    iterres(f, t).is_zero()
}

/// Resultant of `a` and `b` in the level-`v` variable, computed by a
/// pseudo-remainder sequence with the standard degree and leading
/// coefficient correction factors. Coefficients may involve lower-level
/// variables; all divisions are exact in the polynomial ring.
pub fn resultant(a: &RPoly, b: &RPoly, v: usize) -> RPoly {
    if a.is_zero() || b.is_zero() {
        return a.field_zero();
    }
    let da = a.deg_in(v);
    let db = b.deg_in(v);
    if da == 0 && db == 0 {
        return a.field_one();
    }
    if da == 0 {
        return pow_raw(a, db);
    }
    if db == 0 {
        return pow_raw(b, da);
    }
    if da < db {
        let r = resultant(b, a, v);
        return apply_sign(r, da * db);
    }
    let lcb = b.lc_in(v);
    let r = prem(a, b, v);
    if r.is_zero() {
        return a.field_zero();
    }
    let dr = r.deg_in(v);
    let sub_res = resultant(b, &r, v);
    // lc(b)^{(da-db+1) db} res(b, a) = lc(b)^{da-dr} res(b, r)
    let num = mul_raw(&pow_raw(&lcb, da - dr), &sub_res);
    let den = pow_raw(&lcb, (da - db + 1) * db);
    apply_sign(div_exact(&num, &den), da * db)
}

fn apply_sign(r: RPoly, e: usize) -> RPoly {
    if e % 2 == 1 {
        ring::neg(&r)
    } else {
        r
    }
}

/// Pseudo-remainder `prem(a, b) = rem(lc(b)^{da-db+1} a, b)` in the
/// level-`v` variable, division-free.
fn prem(a: &RPoly, b: &RPoly, v: usize) -> RPoly {
    let d = b.deg_in(v);
    debug_assert!(d >= 1 && a.deg_in(v) >= d);
    let lcb = b.lc_in(v);
    let mut e = a.deg_in(v) - d + 1;
    let mut r = a.clone();
    while !r.is_zero() && r.deg_in(v) >= d {
        let k = r.deg_in(v) - d;
        let shifted = monomial_mul(&r.lc_in(v), v, k);
        r = ring::sub(&mul_raw(&lcb, &r), &mul_raw(&shifted, b));
        e -= 1;
    }
    if e > 0 {
        r = mul_raw(&pow_raw(&lcb, e), &r);
    }
    r
}

fn monomial_mul(c: &RPoly, v: usize, k: usize) -> RPoly {
    if k == 0 {
        return c.clone();
    }
    let mut coeffs = vec![c.field_zero(); k];
    coeffs.push(c.clone());
    from_coeffs(v, coeffs)
}

fn pow_raw(a: &RPoly, e: usize) -> RPoly {
    let mut acc = a.field_one();
    for _ in 0..e {
        acc = mul_raw(&acc, a);
    }
    acc
}

/// Exact division in the polynomial ring; panics when the division is not
/// exact (callers guarantee divisibility).
pub(crate) fn div_exact(a: &RPoly, b: &RPoly) -> RPoly {
    assert!(!b.is_zero(), "exact division by zero");
    if a.is_zero() {
        return a.clone();
    }
    if let RPoly::Const(c) = b {
        return ring::scale(a, &c.inv().unwrap());
    }
    let v = b.level();
    let d = b.deg_in(v);
    let mut r = a.clone();
    let mut q_terms: Vec<(usize, RPoly)> = Vec::new();
    while !r.is_zero() && r.deg_in(v) >= d {
        let k = r.deg_in(v) - d;
        let qc = div_exact(&r.lc_in(v), &b.lc_in(v));
        let term = monomial_mul(&qc, v, k);
        r = ring::sub(&r, &mul_raw(&term, b));
        debug_assert!(r.is_zero() || r.deg_in(v) < k + d);
        q_terms.push((k, qc));
    }
    assert!(r.is_zero(), "inexact polynomial division");
    let deg_q = q_terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut coeffs = vec![a.field_zero(); deg_q + 1];
    for (k, qc) in q_terms {
        coeffs[k] = ring::add(&coeffs[k], &qc);
    }
    from_coeffs(v, coeffs)
}

/// Resultant by cofactor expansion of the Sylvester matrix; the independent
/// cross-check for [`resultant`] on small degrees.
pub fn resultant_sylvester(a: &RPoly, b: &RPoly, v: usize) -> RPoly {
    if a.is_zero() || b.is_zero() {
        return a.field_zero();
    }
    let da = a.deg_in(v);
    let db = b.deg_in(v);
    if da == 0 && db == 0 {
        return a.field_one();
    }
    let n = da + db;
    let av = a.view(v);
    let bv = b.view(v);
    let zero = a.field_zero();
    let mut rows = Vec::with_capacity(n);
    for i in 0..db {
        let mut row = vec![zero.clone(); n];
        for (idx, c) in av.iter().rev().enumerate() {
            row[i + idx] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..da {
        let mut row = vec![zero.clone(); n];
        for (idx, c) in bv.iter().rev().enumerate() {
            row[i + idx] = c.clone();
        }
        rows.push(row);
    }
    det(&rows)
}

fn det(m: &[Vec<RPoly>]) -> RPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].field_zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = mul_raw(&m[0][j], &det(&minor));
        acc = if j % 2 == 0 {
            ring::add(&acc, &term)
        } else {
            ring::sub(&acc, &term)
        };
    }
    acc
}

/// Radicality of a rational triangular set, decided exactly over `Q`:
/// `gcd(t_i, t_i') = 1` must hold on every component at every level.
/// Used by tests and input generators; exponential-time in principle.
pub fn is_radical_q(t: &TriangularSet) -> Result<bool, Error> {
    for i in 1..=t.len() {
        let ti = t.gen(i);
        let dti = ring::derivative_main(ti);
        let prefix = TriangularSet::new(t.prefix(i - 1).to_vec())?;
        let sub = euclid_q_cgcd(ti, &dti, &prefix)?;
        for comp in &sub.components {
            if !comp.gcd.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{parse_poly, SplitMix64, VarNames};
    use crate::ring::mul_mod;

    fn p(src: &str, n: usize) -> RPoly {
        parse_poly(src, &VarNames::standard(n)).unwrap()
    }

    fn tset(gens: &[&str], n: usize) -> TriangularSet {
        TriangularSet::new(gens.iter().map(|g| p(g, n)).collect()).unwrap()
    }

    #[test]
    fn iterres_examples() {
        let t = tset(&["z1^2+1", "z2^2+1"], 2);
        assert!(iterres(&p("z1 - z2", 2), &t).is_zero());
        assert!(iterres(&p("1", 2), &t).is_one());
        assert!(iterres(&p("z1", 2), &t).is_one());
    }

    #[test]
    fn zero_divisor_examples() {
        let t = tset(&["z1^2+1", "z2^2+1"], 2);
        assert!(is_zero_divisor(&p("z1 - z2", 2), &t));
        assert!(is_zero_divisor(&p("z1 + z2", 2), &t));
        assert!(!is_zero_divisor(&p("z1", 2), &t));
    }

    #[test]
    fn intro_split_over_q() {
        let t = tset(&["z1^2+1", "z2^2+1"], 2);
        let a = p("x^4 + (z1 + 18*z2)*x^3 + (-z2 + 3*z1)*x^2 + 324*x + 323", 2);
        let b = p("x^3 + (z1 + 18*z2)*x^2 + (-19*z2 + 2*z1)*x + 324", 2);
        let mut res = euclid_q_cgcd(&a, &b, &t).unwrap();
        res.canonicalize();
        assert_eq!(res.components.len(), 2);
        let gens: Vec<Vec<RPoly>> = res
            .components
            .iter()
            .map(|c| c.tset.gens().to_vec())
            .collect();
        let expect_u = vec![p("z1^2+1", 2), p("z2 - z1", 2)];
        let expect_v = vec![p("z1^2+1", 2), p("z2 + z1", 2)];
        assert!(gens.contains(&expect_u));
        assert!(gens.contains(&expect_v));
    }

    #[test]
    fn trivial_gcd_over_empty_set() {
        let empty = TriangularSet::empty();
        let res = euclid_q_cgcd(&p("x - 1", 0), &p("x - 1", 0), &empty).unwrap();
        assert_eq!(res.components.len(), 1);
        assert_eq!(res.components[0].gcd, p("x - 1", 0));
    }

    #[test]
    fn four_component_decomposition() {
        use crate::cli::VarNames;
        let n = VarNames::new(&["x", "y"], "z");
        let parse = |s: &str| parse_poly(s, &n).unwrap();
        let t = TriangularSet::new(vec![
            parse("x^3 - x"),
            parse("y^2 - 3/2*y*x^2 - 3/2*y*x + y + 2*x^2 - 2"),
        ])
        .unwrap();
        let a = parse(
            "z^2 - 8/3*z*y*x^2 + 3*z*y*x - 7/3*z*y - 1/3*z*x^2 + 3*z*x - 5/3*z \
             + 25/6*y*x^2 - 13/2*y*x + 10/3*y + 16/3*x^2 - 2*x - 10/3",
        );
        let b = parse(
            "z^2 + 29/12*z*y*x^2 + 7/4*z*y*x - 11/3*z*y - 8/3*z*x^2 + 3*z*x + 2/3*z \
             + 67/12*y*x^2 - 11/4*y*x - 13/3*y - 13/3*x^2 - 2*x + 19/3",
        );
        let mut res = euclid_q_cgcd(&a, &b, &t).unwrap();
        res.canonicalize();
        let got: Vec<(Vec<RPoly>, RPoly)> = res
            .components
            .iter()
            .map(|c| (c.tset.gens().to_vec(), c.gcd.clone()))
            .collect();
        let mut want = vec![
            (
                vec![parse("x^2 - 1"), parse("y")],
                parse("z^2 + (3*x - 2)*z - 2*x + 2"),
            ),
            (
                vec![parse("x^2 - 1"), parse("y - 3/2*x - 1/2")],
                parse("z + 1/2*x - 3/2"),
            ),
            (vec![parse("x"), parse("y + 2")], parse("z + 5")),
            (vec![parse("x"), parse("y - 1")], parse("1")),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn prs_matches_sylvester() {
        let mut rng = SplitMix64::new(61);
        fn random(rng: &mut SplitMix64, dv: usize, dz: usize) -> RPoly {
            // dense random in z1 (level 1) and the level-3 main variable
            let mut coeffs = Vec::new();
            for _ in 0..=dv {
                let inner: Vec<RPoly> = (0..=dz)
                    .map(|_| RPoly::int((rng.next_u64() % 11) as i64 - 5))
                    .collect();
                coeffs.push(from_coeffs(1, inner));
            }
            from_coeffs(3, coeffs)
        }
        for _ in 0..40 {
            let da = 1 + (rng.next_u64() % 3) as usize;
            let a = random(&mut rng, da, 2);
            let db = 1 + (rng.next_u64() % 3) as usize;
            let b = random(&mut rng, db, 2);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            assert_eq!(resultant(&a, &b, 3), resultant_sylvester(&a, &b, 3));
        }
    }

    #[test]
    fn oracle_matches_planted_gcd() {
        // an irreducible tower: no splits, the gcd is recovered monically
        let t = tset(&["z1^2 - 2"], 1);
        let g = p("x + z1", 1);
        let a = mul_mod(&p("x^2 + 3", 1), &g, &t);
        let b = mul_mod(&p("x + 5", 1), &g, &t);
        let res = euclid_q_cgcd(&a, &b, &t).unwrap();
        assert_eq!(res.components.len(), 1);
        assert_eq!(res.components[0].gcd, g);
    }

    #[test]
    fn radicality_over_q() {
        assert!(is_radical_q(&tset(&["z1^2 - 3"], 1)).unwrap());
        assert!(!is_radical_q(&tset(&["z1^2 - 2*z1 + 1"], 1)).unwrap());
        assert!(is_radical_q(&tset(&["z1^2 - 1", "z2^2 + z1"], 2)).unwrap());
    }
}
