//! Test-side oracles and random generators. Nothing here calls into the
//! algorithms it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thickset::specmodel::FinitePrimePoset;
use thickset::zcomplex::{realize, ChainMap, FgAbGroup, HomologyProfile, PerfectComplexZ};
use thickset::IntMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Integer linear algebra

pub fn random_entries(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

pub fn to_matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    if rows.is_empty() {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_i64_rows(rows).unwrap()
}

fn trial_factor(mut n: i128) -> Vec<(i128, u32)> {
    let mut out = Vec::new();
    let mut p = 2i128;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors (units included, zeros dropped) computed by Bezout
/// row and column rotations on `i128`, then canonicalized prime by prime.
pub fn snf_oracle(rows: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let m = a.len();
    let n = cols;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = (t..m).flat_map(|i| (t..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let (g, x, y) = egcd_big(&a[t][t], &a[i][t]);
                    let (u, v) = (&a[t][t] / &g, &a[i][t] / &g);
                    for j in 0..n {
                        let (top, bot) = (a[t][j].clone(), a[i][j].clone());
                        a[t][j] = &x * &top + &y * &bot;
                        a[i][j] = -&v * &top + &u * &bot;
                    }
                    changed = true;
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let (g, x, y) = egcd_big(&a[t][t], &a[t][j]);
                    let (u, v) = (&a[t][t] / &g, &a[t][j] / &g);
                    for row in a.iter_mut() {
                        let (l, r) = (row[t].clone(), row[j].clone());
                        row[t] = &x * &l + &y * &r;
                        row[j] = -&v * &l + &u * &r;
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(a[t][t].to_i128().expect("diagonal entry fits i128").abs());
        t += 1;
    }
    canonical_divisors(&diag)
}

fn egcd_big(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if !a.is_zero() && (b % a).is_zero() {
        return (a.clone(), BigInt::from(1), BigInt::from(0));
    }
    if b.is_zero() {
        return (a.clone(), BigInt::from(1), BigInt::from(0));
    }
    let (g, x, y) = egcd_big(b, &(a % b));
    let q = a / b;
    (g, y.clone(), x - q * y)
}

/// Sorts a multiset of nonzero diagonal entries into a divisibility chain
/// with the same count, via per-prime exponent lists.
pub fn canonical_divisors(diag: &[i128]) -> Vec<i128> {
    let k = diag.len();
    let mut by_prime: BTreeMap<i128, Vec<u32>> = BTreeMap::new();
    for &d in diag {
        for (p, e) in trial_factor(d) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let mut out = vec![1i128; k];
    for (p, mut es) in by_prime {
        es.sort_unstable();
        for (slot, e) in out.iter_mut().rev().zip(es.iter().rev()) {
            *slot *= p.pow(*e);
        }
    }
    out
}

/// `d_k / d_{k-1}` from gcds of `k x k` minors; only for small matrices.
pub fn determinantal_divisors(rows: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let m = rows.len();
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=m.min(cols) {
        let mut g = 0i128;
        for rs in subsets(m, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                g = gcd(g, det_i128(minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Fraction-free Gaussian elimination.
pub fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Rank over ℚ by fraction-free elimination on big integers.
pub fn rank_oracle(m: &IntMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..rows {
            let (pivot, lead) = (a[rank][c].clone(), a[i][c].clone());
            for j in 0..cols {
                a[i][j] = &a[i][j] * &pivot - &a[rank][j] * &lead;
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// Unimodular changes of basis

/// A random unimodular matrix together with its inverse.
pub fn unimodular_pair(rng: &mut impl Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut p = vec![vec![BigInt::zero(); n]; n];
    let mut q = p.clone();
    for i in 0..n {
        p[i][i] = 1.into();
        q[i][i] = 1.into();
    }
    if n >= 2 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = BigInt::from(rng.gen_range(-2i64..=2));
            // P <- E P with E adding c * row j to row i; Q <- Q E^{-1}
            for k in 0..n {
                let v = &p[j][k] * &c;
                p[i][k] += v;
                let w = &q[k][i] * &c;
                q[k][j] -= w;
            }
        }
    }
    if n >= 1 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..n);
        for k in 0..n {
            p[i][k] = -p[i][k].clone();
            q[k][i] = -q[k][i].clone();
        }
    }
    let mk = |rows: Vec<Vec<BigInt>>| if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(rows).unwrap() };
    (mk(p), mk(q))
}

/// Per-degree bases changes `(P_n, P_n^{-1})` for every degree of `c`.
pub type BasisChange = BTreeMap<i64, (IntMatrix, IntMatrix)>;

pub fn random_basis_change(rng: &mut impl Rng, c: &PerfectComplexZ) -> BasisChange {
    c.ranks().iter().map(|(&n, &r)| (n, unimodular_pair(rng, r, 3 * r + 2))).collect()
}

fn basis(b: &BasisChange, n: usize, deg: i64, inverse: bool) -> IntMatrix {
    match b.get(&deg) {
        Some((p, q)) => if inverse { q.clone() } else { p.clone() },
        None => IntMatrix::identity(n),
    }
}

/// `d_n -> P_{n-1} d_n P_n^{-1}`, an isomorphic complex.
pub fn apply_basis_change(c: &PerfectComplexZ, b: &BasisChange) -> PerfectComplexZ {
    let ds = c
        .differentials()
        .iter()
        .map(|(&n, d)| {
            let left = basis(b, c.rank(n - 1), n - 1, false);
            let right = basis(b, c.rank(n), n, true);
            (n, left.mul(d).unwrap().mul(&right).unwrap())
        })
        .collect();
    PerfectComplexZ::new(c.ranks().clone(), ds).unwrap()
}

/// `f_n -> Q_n f_n P_n^{-1}` for new bases `P` of the source and `Q` of the target.
pub fn transport_map(f: &ChainMap, src: &BasisChange, dst: &BasisChange) -> ChainMap {
    let a = apply_basis_change(f.source(), src);
    let b = apply_basis_change(f.target(), dst);
    let degrees: BTreeSet<i64> = a.ranks().keys().chain(b.ranks().keys()).copied().collect();
    let comps = degrees
        .into_iter()
        .map(|n| {
            let q = basis(dst, f.target().rank(n), n, false);
            let pinv = basis(src, f.source().rank(n), n, true);
            (n, q.mul(&f.component(n)).unwrap().mul(&pinv).unwrap())
        })
        .collect();
    ChainMap::new(a, b, comps).unwrap()
}

// ---------------------------------------------------------------------------
// Random complexes

pub const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Product of random powers of primes from `primes`, at least one factor.
pub fn random_order(rng: &mut impl Rng, primes: &[u64]) -> BigInt {
    let mut n = BigInt::from(1);
    let k = rng.gen_range(1..=2);
    for _ in 0..k {
        let p = *primes.choose(rng).unwrap();
        n *= BigInt::from(p).pow(rng.gen_range(1..=3));
    }
    n
}

/// Torsion homology over `primes` in degrees `lo..=hi`; at least one group is
/// nonzero when `primes` is nonempty.
pub fn random_torsion_profile(rng: &mut impl Rng, primes: &[u64], lo: i64, hi: i64) -> HomologyProfile {
    let mut h = HomologyProfile::new();
    if primes.is_empty() {
        return h;
    }
    while h.is_zero() {
        for n in lo..=hi {
            if rng.gen_bool(0.4) {
                let k = rng.gen_range(1..=2);
                let orders: Vec<BigInt> = (0..k).map(|_| random_order(rng, primes)).collect();
                h.add(n, &FgAbGroup::from_cyclic(0, orders));
            }
        }
    }
    h
}

pub fn random_profile(rng: &mut impl Rng, free: bool) -> HomologyProfile {
    let primes: Vec<u64> = SMALL_PRIMES.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    let mut h = random_torsion_profile(rng, &primes, -2, 3);
    if free {
        let n = rng.gen_range(-2..=3);
        h.add(n, &FgAbGroup::free(rng.gen_range(1..=2)));
    }
    h
}

/// A contractible complex `Z --±1--> Z` in degrees `n`, `n - 1`.
pub fn contractible(n: i64, sign: i64) -> PerfectComplexZ {
    PerfectComplexZ::from_i64(&[(n - 1, 1), (n, 1)], &[(n, &[&[sign]])]).unwrap()
}

/// A complex with homology `h` hidden behind contractible summands and a
/// random change of basis.
pub fn disguise(rng: &mut impl Rng, h: &HomologyProfile) -> PerfectComplexZ {
    let mut c = realize(h);
    for _ in 0..rng.gen_range(0..=2) {
        let n = rng.gen_range(-2..=3);
        c = c.direct_sum(&contractible(n, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    let b = random_basis_change(rng, &c);
    apply_basis_change(&c, &b)
}

pub fn random_complex(rng: &mut impl Rng) -> (PerfectComplexZ, HomologyProfile) {
    let free = rng.gen_bool(0.3);
    let h = random_profile(rng, free);
    (disguise(rng, &h), h)
}

// ---------------------------------------------------------------------------
// Random chain maps

/// `f = d h + h d`, a chain map for any `h` of degree one.
pub fn null_homotopic(rng: &mut impl Rng, a: &PerfectComplexZ, b: &PerfectComplexZ) -> ChainMap {
    let degrees: BTreeSet<i64> = a.ranks().keys().chain(b.ranks().keys()).copied().collect();
    let h: BTreeMap<i64, IntMatrix> = degrees
        .iter()
        .flat_map(|&n| [n - 1, n])
        .map(|n| (n, to_matrix(&random_entries(rng, b.rank(n + 1), a.rank(n), 2), a.rank(n))))
        .collect();
    let hz = |n: i64| h.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(b.rank(n + 1), a.rank(n)));
    let comps = degrees
        .iter()
        .map(|&n| {
            let x = b.differential(n + 1).mul(&hz(n)).unwrap();
            let y = hz(n - 1).mul(&a.differential(n)).unwrap();
            (n, x.add(&y).unwrap())
        })
        .collect();
    ChainMap::new(a.clone(), b.clone(), comps).unwrap()
}

/// A map `M(a) -> M(b)`: `f_1 = y`, `f_0 = x` with `b y = x a`.
pub fn moore_map(a: u64, b: u64, t: i64) -> ChainMap {
    let g = num_integer::gcd(a, b);
    let x = (b / g) as i64 * t;
    let y = (a / g) as i64 * t;
    let src = thickset::zcomplex::moore_complex(a).unwrap();
    let dst = thickset::zcomplex::moore_complex(b).unwrap();
    let comps = BTreeMap::from([
        (0, IntMatrix::from_i64_rows(&[[x]]).unwrap()),
        (1, IntMatrix::from_i64_rows(&[[y]]).unwrap()),
    ]);
    ChainMap::new(src, dst, comps).unwrap()
}

pub fn random_moore_order(rng: &mut impl Rng, primes: &[u64]) -> u64 {
    random_order(rng, primes).to_u64().unwrap()
}

/// Sum of componentwise maps between direct sums.
pub fn sum_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let a = f.source().direct_sum(g.source());
    let b = f.target().direct_sum(g.target());
    let degrees: BTreeSet<i64> = a.ranks().keys().chain(b.ranks().keys()).copied().collect();
    let comps = degrees
        .into_iter()
        .map(|n| (n, IntMatrix::block_diag(&f.component(n), &g.component(n))))
        .filter(|(_, m)| !m.is_empty())
        .collect();
    ChainMap::new(a, b, comps).unwrap()
}

pub fn add_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let degrees: BTreeSet<i64> = f.source().ranks().keys().chain(f.target().ranks().keys()).copied().collect();
    let comps = degrees.into_iter().map(|n| (n, f.component(n).add(&g.component(n)).unwrap())).collect();
    ChainMap::new(f.source().clone(), f.target().clone(), comps).unwrap()
}

/// Shifts source and target of a map by `k`.
pub fn shift_map(f: &ChainMap, k: i64) -> ChainMap {
    let comps = f
        .source()
        .ranks()
        .keys()
        .chain(f.target().ranks().keys())
        .map(|&n| (n + k, f.component(n)))
        .collect();
    ChainMap::new(f.source().shift(k), f.target().shift(k), comps).unwrap()
}

/// A random chain map between torsion complexes over `primes`, mixing Moore
/// maps, shifts, sums, null-homotopic perturbations, and changes of basis.
pub fn random_chain_map(rng: &mut impl Rng, primes: &[u64]) -> ChainMap {
    let pieces = rng.gen_range(1..=3);
    let mut f: Option<ChainMap> = None;
    for _ in 0..pieces {
        let a = random_moore_order(rng, primes);
        let b = random_moore_order(rng, primes);
        let g = shift_map(&moore_map(a, b, rng.gen_range(-3..=3)), rng.gen_range(-1..=1));
        f = Some(match f {
            None => g,
            Some(f) => sum_maps(&f, &g),
        });
    }
    let f = f.unwrap();
    let f = add_maps(&f, &null_homotopic(rng, f.source(), f.target()));
    let src = random_basis_change(rng, f.source());
    let dst = random_basis_change(rng, f.target());
    transport_map(&f, &src, &dst)
}

// ---------------------------------------------------------------------------
// Posets

/// All posets on `{0..n}` whose order extends the natural one, deduplicated
/// by order relation; every poset is isomorphic to one of these.
pub fn naturally_labelled_posets(n: usize) -> Vec<Arc<FinitePrimePoset>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        if seen.insert(leq.clone()) {
            out.push(Arc::new(poset_from_order(&leq)));
        }
    }
    out
}

pub fn element_name(i: usize) -> String {
    format!("x{i}")
}

fn poset_from_order(leq: &[Vec<bool>]) -> FinitePrimePoset {
    let n = leq.len();
    let names: Vec<String> = (0..n).map(element_name).collect();
    let rels: Vec<(String, String)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && leq[i][j])
        .map(|(i, j)| (names[i].clone(), names[j].clone()))
        .collect();
    FinitePrimePoset::new(&names, &rels, None).unwrap()
}

pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> Arc<FinitePrimePoset> {
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
        for j in i + 1..n {
            leq[i][j] = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    Arc::new(poset_from_order(&leq))
}

/// The same poset with a new greatest element `top` declared as cone point.
pub fn with_cone(p: &FinitePrimePoset) -> Arc<FinitePrimePoset> {
    let mut names: Vec<String> = p.names().to_vec();
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && p.leq(i, j) {
                rels.push((names[i].clone(), names[j].clone()));
            }
        }
        rels.push((names[i].clone(), "top".into()));
    }
    names.push("top".into());
    Arc::new(FinitePrimePoset::new(&names, &rels, Some("top")).unwrap())
}

pub fn is_up_closed(p: &FinitePrimePoset, s: &BTreeSet<usize>) -> bool {
    s.iter().all(|&i| (0..p.len()).all(|j| !p.leq(i, j) || s.contains(&j)))
}

/// All up-closed subsets, by checking every subset.
pub fn brute_up_sets(p: &FinitePrimePoset) -> BTreeSet<BTreeSet<usize>> {
    let n = p.len();
    (0u64..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| is_up_closed(p, s))
        .collect()
}

/// Whether `t` is a single piece: in plain mode, not a disjoint union of two
/// nonempty up-closed sets; in punctured mode (cone point `c`), not a union
/// of two up-closed sets meeting only in `c`, each larger than `{c}`.
pub fn brute_indecomposable(p: &FinitePrimePoset, t: &BTreeSet<usize>, cone: Option<usize>) -> bool {
    let core: Vec<usize> = t.iter().copied().filter(|&i| Some(i) != cone).collect();
    if core.is_empty() {
        return cone.is_some() && !t.is_empty();
    }
    let k = core.len();
    for mask in 1u64..(1 << k) - 1 {
        let mut a: BTreeSet<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| core[i]).collect();
        let mut b: BTreeSet<usize> = (0..k).filter(|&i| mask >> i & 1 == 0).map(|i| core[i]).collect();
        if let Some(c) = cone {
            a.insert(c);
            b.insert(c);
        }
        if is_up_closed(p, &a) && is_up_closed(p, &b) {
            return false;
        }
    }
    true
}

/// Every way to write `s` as pieces that are up-closed and indecomposable and
/// pairwise disjoint (punctured: meet only in the cone point).
pub fn brute_partitions(p: &FinitePrimePoset, s: &BTreeSet<usize>, cone: Option<usize>) -> Vec<BTreeSet<BTreeSet<usize>>> {
    let core: Vec<usize> = s.iter().copied().filter(|&i| Some(i) != cone).collect();
    if core.is_empty() {
        return if s.is_empty() { Vec::new() } else { vec![BTreeSet::from([s.clone()])] };
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    set_partitions(&core, 0, &mut blocks, &mut |blocks| {
        let pieces: BTreeSet<BTreeSet<usize>> = blocks
            .iter()
            .map(|b| {
                let mut piece: BTreeSet<usize> = b.iter().copied().collect();
                if let Some(c) = cone {
                    piece.insert(c);
                }
                piece
            })
            .collect();
        if pieces.iter().all(|t| is_up_closed(p, t) && brute_indecomposable(p, t, cone)) {
            out.push(pieces);
        }
    });
    out
}

fn set_partitions(items: &[usize], k: usize, blocks: &mut Vec<Vec<usize>>, visit: &mut impl FnMut(&[Vec<usize>])) {
    if k == items.len() {
        visit(blocks);
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(items[k]);
        set_partitions(items, k + 1, blocks, visit);
        blocks[b].pop();
    }
    blocks.push(vec![items[k]]);
    set_partitions(items, k + 1, blocks, visit);
    blocks.pop();
}
