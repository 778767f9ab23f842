//! Signed operations: finite operation tables paired with a signum
//! vector, and the preclone algebra on them (cyclic shift, transposition,
//! fictitious arguments, identification, composition), plus derived
//! constructions, duals and canonical keys.

use crate::codec::{decode, encode, tuple_space};
use crate::error::{Error, Result};
use crate::monoid::Monoid;

/// Signum vector in `S^n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signum(pub Vec<u8>);

impl Signum {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn constant(s: u8, n: usize) -> Self {
        Signum(vec![s; n])
    }
}

/// An operation table with the signum ignored: the underlying function
/// of a signed operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnsignedOp {
    pub k: usize,
    pub arity: usize,
    pub values: Vec<u8>,
}

impl UnsignedOp {
    pub fn new(k: usize, arity: usize, values: Vec<u8>) -> Result<Self> {
        let space = tuple_space(k, arity)
            .ok_or_else(|| Error::CapExceeded(format!("table size {k}^{arity}")))?;
        if arity == 0 || values.len() != space {
            return Err(Error::Malformed(format!(
                "operation table must have {k}^{arity} entries"
            )));
        }
        if values.iter().any(|&v| v as usize >= k) {
            return Err(Error::Malformed("table entry out of domain".into()));
        }
        Ok(UnsignedOp { k, arity, values })
    }

    pub fn projection(k: usize, arity: usize, pos: usize) -> Result<Self> {
        let space = tuple_space(k, arity)
            .ok_or_else(|| Error::CapExceeded(format!("table size {k}^{arity}")))?;
        if pos >= arity {
            return Err(Error::BadRowIndex(pos, arity));
        }
        let values = (0..space).map(|t| decode(t, k, arity)[pos]).collect();
        Ok(UnsignedOp { k, arity, values })
    }

    pub fn eval(&self, args: &[u8]) -> Result<u8> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        Ok(self.values[encode(args, self.k)])
    }

    #[inline]
    pub fn eval_index(&self, index: usize) -> u8 {
        self.values[index]
    }

    /// True iff the table is the projection onto position `pos`.
    pub fn is_projection_onto(&self, pos: usize) -> bool {
        (0..self.values.len()).all(|t| self.values[t] == decode(t, self.k, self.arity)[pos])
    }

    pub fn with_signum(&self, signum: Signum) -> Result<SignedOp> {
        SignedOp::new(self.k, signum, self.values.clone())
    }
}

/// An operation table over `A = {0..k-1}` with one signum per argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedOp {
    k: usize,
    signum: Signum,
    values: Vec<u8>,
}

impl SignedOp {
    pub fn new(k: usize, signum: Signum, values: Vec<u8>) -> Result<Self> {
        let arity = signum.len();
        if arity == 0 {
            return Err(Error::Malformed("signum must have length >= 1".into()));
        }
        let space = tuple_space(k, arity)
            .ok_or_else(|| Error::CapExceeded(format!("table size {k}^{arity}")))?;
        if values.len() != space {
            return Err(Error::Malformed(format!(
                "operation table must have {k}^{arity} entries"
            )));
        }
        if values.iter().any(|&v| v as usize >= k) {
            return Err(Error::Malformed("table entry out of domain".into()));
        }
        Ok(SignedOp { k, signum, values })
    }

    /// The identity operation with signum `(s)`.
    pub fn identity(k: usize, s: u8) -> Self {
        SignedOp { k, signum: Signum(vec![s]), values: (0..k as u8).collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arity(&self) -> usize {
        self.signum.len()
    }

    pub fn signum(&self) -> &Signum {
        &self.signum
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// The underlying function, signum ignored.
    pub fn underlying(&self) -> UnsignedOp {
        UnsignedOp { k: self.k, arity: self.arity(), values: self.values.clone() }
    }

    pub fn eval(&self, args: &[u8]) -> Result<u8> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: args.len() });
        }
        Ok(self.values[encode(args, self.k)])
    }

    #[inline]
    pub fn eval_index(&self, index: usize) -> u8 {
        self.values[index]
    }

    /// Cyclic shift of arguments; identity on unary operations.
    pub fn zeta(&self) -> SignedOp {
        let n = self.arity();
        if n == 1 {
            return self.clone();
        }
        // (zeta f)(x_1,..,x_n) = f(x_2,..,x_n,x_1)
        let mut signum = Vec::with_capacity(n);
        signum.push(self.signum.0[n - 1]);
        signum.extend_from_slice(&self.signum.0[..n - 1]);
        let kn1 = self.values.len() / self.k;
        let values = (0..self.values.len())
            .map(|t| self.values[(t % kn1) * self.k + t / kn1])
            .collect();
        SignedOp { k: self.k, signum: Signum(signum), values }
    }

    /// Transposition of the first two arguments; identity on unary.
    pub fn tau(&self) -> SignedOp {
        let n = self.arity();
        if n == 1 {
            return self.clone();
        }
        let mut signum = self.signum.0.clone();
        signum.swap(0, 1);
        let kn1 = self.values.len() / self.k;
        let kn2 = kn1 / self.k;
        let values = (0..self.values.len())
            .map(|t| {
                let (a, b, r) = (t / kn1, t / kn2 % self.k, t % kn2);
                self.values[b * kn1 + a * kn2 + r]
            })
            .collect();
        SignedOp { k: self.k, signum: Signum(signum), values }
    }

    /// Adds a fictitious first argument with signum `s`.
    pub fn nabla(&self, s: u8) -> Result<SignedOp> {
        let n = self.arity();
        let space = tuple_space(self.k, n + 1)
            .ok_or_else(|| Error::CapExceeded(format!("table size {}^{}", self.k, n + 1)))?;
        let mut signum = Vec::with_capacity(n + 1);
        signum.push(s);
        signum.extend_from_slice(&self.signum.0);
        // first coordinate most significant: the old table repeats k times
        let mut values = Vec::with_capacity(space);
        for _ in 0..self.k {
            values.extend_from_slice(&self.values);
        }
        Ok(SignedOp { k: self.k, signum: Signum(signum), values })
    }

    /// Identifies the first two arguments when they share a signum;
    /// otherwise returns the operation unchanged.
    pub fn delta(&self) -> SignedOp {
        let n = self.arity();
        if n < 2 || self.signum.0[0] != self.signum.0[1] {
            return self.clone();
        }
        let mut signum = Vec::with_capacity(n - 1);
        signum.push(self.signum.0[0]);
        signum.extend_from_slice(&self.signum.0[2..]);
        let kn1 = self.values.len() / self.k;
        let kn2 = kn1 / self.k;
        // table over (x_1, x_3..x_n), reading f(x_1, x_1, x_3..x_n)
        let values = (0..kn1)
            .map(|t| {
                let (a, r) = (t / kn2, t % kn2);
                self.values[a * kn1 + a * kn2 + r]
            })
            .collect();
        SignedOp { k: self.k, signum: Signum(signum), values }
    }

    /// First-position composition: `(f.compose(g))(y_1..y_m, x_2..x_n) =
    /// f(g(y_1..y_m), x_2..x_n)`, with the signum of `g` multiplied on
    /// the right by `f`'s first signum entry.
    pub fn compose(&self, g: &SignedOp, monoid: &Monoid) -> Result<SignedOp> {
        if self.k != g.k {
            return Err(Error::DomainMismatch(self.k, g.k));
        }
        let n = self.arity();
        let m = g.arity();
        let arity = m + n - 1;
        let space = tuple_space(self.k, arity)
            .ok_or_else(|| Error::CapExceeded(format!("table size {}^{arity}", self.k)))?;
        let s1 = self.signum.0[0];
        let mut signum = Vec::with_capacity(arity);
        signum.extend(g.signum.0.iter().map(|&sp| monoid.mul(sp, s1)));
        signum.extend_from_slice(&self.signum.0[1..]);
        let k = self.k;
        // result index = (y block) * k^(n-1) + (x_2..x_n)
        let kn1 = self.values.len() / k;
        let mut values = Vec::with_capacity(space);
        for y in 0..g.values.len() {
            let base = g.values[y] as usize * kn1;
            values.extend_from_slice(&self.values[base..base + kn1]);
        }
        debug_assert_eq!(values.len(), space);
        Ok(SignedOp { k, signum: Signum(signum), values })
    }

    /// Trivial projection `(p_pos^(n))^signum`; requires the essential
    /// position to carry the unit signum.
    pub fn projection(k: usize, signum: Signum, pos: usize, monoid: &Monoid) -> Result<SignedOp> {
        if pos >= signum.len() {
            return Err(Error::BadRowIndex(pos, signum.len()));
        }
        if signum.0[pos] != monoid.unit() {
            return Err(Error::BadSignum);
        }
        let table = UnsignedOp::projection(k, signum.len(), pos)?;
        Ok(SignedOp { k, signum, values: table.values })
    }

    /// True iff the table is a projection onto some position whose
    /// signum is the unit.
    pub fn is_trivial_projection(&self, monoid: &Monoid) -> bool {
        let under = self.underlying();
        (0..self.arity()).any(|i| {
            self.signum.0[i] == monoid.unit() && under.is_projection_onto(i)
        })
    }

    /// Conjugation by a permutation of the base set; signum unchanged.
    pub fn pi_dual(&self, pi: &[u8]) -> SignedOp {
        let k = self.k;
        debug_assert_eq!(pi.len(), k);
        let mut pi_inv = vec![0u8; k];
        for (i, &p) in pi.iter().enumerate() {
            pi_inv[p as usize] = i as u8;
        }
        let values = (0..self.values.len())
            .map(|t| {
                let x = decode(t, k, self.arity());
                let pre: Vec<u8> = x.iter().map(|&a| pi_inv[a as usize]).collect();
                pi[self.values[encode(&pre, k)] as usize]
            })
            .collect();
        SignedOp { k, signum: self.signum.clone(), values }
    }

    /// Applies a monoid automorphism to the signum; table unchanged.
    pub fn h_map(&self, h: &[u8]) -> SignedOp {
        let signum = Signum(self.signum.0.iter().map(|&s| h[s as usize]).collect());
        SignedOp { k: self.k, signum, values: self.values.clone() }
    }

    /// Injective encoding of `(k, arity, signum, values)`.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(4 + self.arity() + self.values.len());
        key.extend_from_slice(&(self.k as u16).to_be_bytes());
        key.extend_from_slice(&(self.arity() as u16).to_be_bytes());
        key.extend_from_slice(&self.signum.0);
        key.extend_from_slice(&self.values);
        key
    }

    pub fn from_canonical_key(key: &[u8]) -> Result<SignedOp> {
        if key.len() < 4 {
            return Err(Error::Malformed("key too short".into()));
        }
        let k = u16::from_be_bytes([key[0], key[1]]) as usize;
        let arity = u16::from_be_bytes([key[2], key[3]]) as usize;
        if key.len() < 4 + arity {
            return Err(Error::Malformed("key too short".into()));
        }
        let signum = Signum(key[4..4 + arity].to_vec());
        let values = key[4 + arity..].to_vec();
        SignedOp::new(k, signum, values)
    }

}

impl PartialOrd for SignedOp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedOp {
    /// Orders by arity, then signum (codec order on `S^n`), then table.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.k, self.arity(), &self.signum, &self.values).cmp(&(
            other.k,
            other.arity(),
            &other.signum,
            &other.values,
        ))
    }
}

/// True iff `f` is a minor of `g`: some argument map `sigma` with
/// `f(a_1..a_n) = g(a_sigma(1)..a_sigma(m))` for all tuples. Signa are
/// ignored.
pub fn is_minor(f: &UnsignedOp, g: &UnsignedOp) -> bool {
    if f.k != g.k {
        return false;
    }
    let k = f.k;
    let n = f.arity;
    let m = g.arity;
    // enumerate sigma: {0..m-1} -> {0..n-1}
    let count = n.pow(m as u32);
    let space = f.values.len();
    'outer: for code in 0..count {
        let mut sigma = vec![0usize; m];
        let mut c = code;
        for slot in sigma.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        for t in 0..space {
            let a = decode(t, k, n);
            let mapped: Vec<u8> = sigma.iter().map(|&j| a[j]).collect();
            if f.values[t] != g.values[encode(&mapped, k)] {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// Applies the argument permutation `perm` using only the preclone
/// primitives zeta and tau: the result `g` satisfies
/// `g(x_1,..,x_n) = f(x_{perm[1]},..,x_{perm[n]})` (0-based entries).
pub fn permute_args(f: &SignedOp, perm: &[usize]) -> Result<SignedOp> {
    let n = f.arity();
    if perm.len() != n || {
        let mut seen = vec![false; n];
        perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    } {
        return Err(Error::Malformed("not a permutation of the arguments".into()));
    }
    // Invariant: g(x_0,..) = f(x_{a[0]}, x_{a[1]}, ..). Applying zeta
    // increments every a-entry mod n; tau swaps the values 0 and 1.
    // Bubble-sort the one-line form of perm; replaying the recorded
    // adjacent transpositions as value swaps composes to exactly perm.
    let mut a: Vec<usize> = perm.to_vec();
    let mut g = f.clone();
    loop {
        let mut swapped = false;
        for j in 0..n.saturating_sub(1) {
            if a[j] > a[j + 1] {
                a.swap(j, j + 1);
                g = swap_values(&g, j);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(g)
}

/// Exchanges the assignment values `q` and `q+1` (0-based) via
/// zeta/tau: shift `q` to 0, swap the first two values, shift back.
fn swap_values(f: &SignedOp, q: usize) -> SignedOp {
    let n = f.arity();
    let mut g = f.clone();
    for _ in 0..(n - q) % n {
        g = g.zeta();
    }
    g = g.tau();
    for _ in 0..q {
        g = g.zeta();
    }
    g
}

/// Full general composition `f(g_1(..), .., g_n(..))` built from the
/// primitives: repeated first-position composition and cyclic shifts.
pub fn general_compose(f: &SignedOp, gs: &[&SignedOp], monoid: &Monoid) -> Result<SignedOp> {
    if gs.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: gs.len() });
    }
    let mut h = f.clone();
    for g in gs {
        let before = h.arity();
        h = h.compose(g, monoid)?;
        // move the remaining outer arguments in front of the new block
        for _ in 0..before - 1 {
            h = h.zeta();
        }
    }
    Ok(h)
}

/// Composition of `g` into the `i`-th argument (0-based) of `f`,
/// derived from the primitives via argument permutations.
pub fn compose_at(f: &SignedOp, i: usize, g: &SignedOp, monoid: &Monoid) -> Result<SignedOp> {
    let n = f.arity();
    if i >= n {
        return Err(Error::BadRowIndex(i, n));
    }
    // bring argument i to the front: f's argument i reads the new
    // first variable, the others keep their relative order
    let mut front: Vec<usize> = Vec::with_capacity(n);
    for j in 0..n {
        front.push(match j {
            _ if j < i => j + 1,
            _ if j == i => 0,
            _ => j,
        });
    }
    let f_front = permute_args(f, &front)?;
    let h = f_front.compose(g, monoid)?;
    // h's arguments are (y_0..y_{m-1}, x_0..x_{i-1}, x_{i+1}..);
    // rebuild the order (x_0..x_{i-1}, y block, x_{i+1}..)
    let m = g.arity();
    let mut back: Vec<usize> = Vec::with_capacity(h.arity());
    back.extend(i..i + m); // the y block lands after the leading x's
    back.extend(0..i); // x_0..x_{i-1}
    back.extend(m + i..h.arity()); // trailing x's keep their slots
    permute_args(&h, &back)
}

/// Direct table evaluation of general composition; used as the oracle
/// the derived helper is checked against.
pub fn general_compose_direct(
    f: &SignedOp,
    gs: &[&SignedOp],
    monoid: &Monoid,
) -> Result<SignedOp> {
    if gs.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: gs.len() });
    }
    let k = f.k();
    let arity: usize = gs.iter().map(|g| g.arity()).sum();
    let space = tuple_space(k, arity)
        .ok_or_else(|| Error::CapExceeded(format!("table size {k}^{arity}")))?;
    let mut signum = Vec::with_capacity(arity);
    for (g, &s) in gs.iter().zip(&f.signum().0) {
        signum.extend(g.signum().0.iter().map(|&sp| monoid.mul(sp, s)));
    }
    let values = (0..space)
        .map(|t| {
            let x = decode(t, k, arity);
            let mut inner = Vec::with_capacity(f.arity());
            let mut off = 0;
            for g in gs {
                inner.push(g.values()[encode(&x[off..off + g.arity()], k)]);
                off += g.arity();
            }
            f.values()[encode(&inner, k)]
        })
        .collect();
    SignedOp::new(k, Signum(signum), values)
}
