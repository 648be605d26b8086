//! Linear systems `Ax = b` over `Z_p`, `[N]` or a finite abelian group, and
//! the r-partite hypergraph `G(F, A, b, Z)` of their solutions.
//!
//! JSON form:
//!
//! ```text
//! {"field": {"kind": "zp", "p": 7}, "A": [[1, 1, -2]], "b": [0], "forbid_repeats": true}
//! {"field": {"kind": "interval", "N": 9}, ...}
//! {"field": {"kind": "abelian", "orders": [2, 4]}, "A": [[1, 1, 1]], "b": [[0, 0]], ...}
//! ```
//!
//! Group elements are integers, or coordinate lists for abelian groups with
//! more than one cyclic factor. `"Z"` optionally lists discounted tuples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{self, Rational};
use crate::subsets::check_limit;

/// Largest `|F|` the builders will index.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;
/// Largest number of candidate tuples visited by a solution enumeration.
pub const MAX_ENUMERATION: u64 = 50_000_000;
/// Largest group `Z_m^k` whose subgroups are closed by search.
pub const MAX_GROUP_CLOSURE: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    /// The prime field `Z_p`.
    Zp { p: u64 },
    /// The integers `1..=N`.
    Interval {
        #[serde(rename = "N", alias = "n")]
        n: u64,
    },
    /// `Z_{o_1} × … × Z_{o_c}`.
    Abelian { orders: Vec<u64> },
}

impl FieldSpec {
    pub fn size(&self) -> u64 {
        match self {
            FieldSpec::Zp { p } => *p,
            FieldSpec::Interval { n } => *n,
            FieldSpec::Abelian { orders } => orders.iter().product(),
        }
    }

    /// Modulus of each coordinate; `None` means plain integers.
    fn moduli(&self) -> Vec<Option<u64>> {
        match self {
            FieldSpec::Zp { p } => vec![Some(*p)],
            FieldSpec::Interval { .. } => vec![None],
            FieldSpec::Abelian { orders } => orders.iter().map(|&o| Some(o)).collect(),
        }
    }

    /// Element with index `idx` (`0..size`), as coordinates.
    pub fn element(&self, idx: usize) -> Vec<i64> {
        match self {
            FieldSpec::Zp { .. } => vec![idx as i64],
            FieldSpec::Interval { .. } => vec![idx as i64 + 1],
            FieldSpec::Abelian { orders } => {
                let mut out = vec![0; orders.len()];
                let mut rest = idx as u64;
                for (slot, &o) in out.iter_mut().zip(orders).rev() {
                    *slot = (rest % o) as i64;
                    rest /= o;
                }
                out
            }
        }
    }

    /// Index of a canonical element, `None` when out of range.
    pub fn index(&self, elem: &[i64]) -> Option<usize> {
        match self {
            FieldSpec::Zp { p } => match elem {
                [v] if (0..*p as i64).contains(v) => Some(*v as usize),
                _ => None,
            },
            FieldSpec::Interval { n } => match elem {
                [v] if (1..=*n as i64).contains(v) => Some(*v as usize - 1),
                _ => None,
            },
            FieldSpec::Abelian { orders } => {
                if elem.len() != orders.len() {
                    return None;
                }
                let mut idx = 0u64;
                for (&x, &o) in elem.iter().zip(orders) {
                    if !(0..o as i64).contains(&x) {
                        return None;
                    }
                    idx = idx * o + x as u64;
                }
                Some(idx as usize)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Zp { p } if !is_prime(*p) => invalid(format!("zp needs a prime, got {p}")),
            FieldSpec::Interval { n } if *n == 0 => invalid("interval needs N >= 1"),
            FieldSpec::Abelian { orders } if orders.is_empty() || orders.contains(&0) => {
                invalid("abelian needs a non-empty list of positive orders")
            }
            _ => check_limit("field size", self.size(), MAX_FIELD_SIZE),
        }
    }
}

/// A group element in JSON: a bare integer or a coordinate list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Scalar(i64),
    Tuple(Vec<i64>),
}

impl Element {
    fn coords(&self) -> Vec<i64> {
        match self {
            Element::Scalar(v) => vec![*v],
            Element::Tuple(v) => v.clone(),
        }
    }

    fn from_coords(c: &[i64]) -> Self {
        match c {
            [v] => Element::Scalar(*v),
            _ => Element::Tuple(c.to_vec()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSystem {
    field: FieldSpec,
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    b: Vec<Element>,
    #[serde(default)]
    forbid_repeats: bool,
    #[serde(rename = "Z", default, skip_serializing_if = "Option::is_none")]
    z: Option<Vec<Vec<Element>>>,
}

/// A `k × r` system `(F, A, b, Z)`. `Z` is the union of the explicit list and,
/// with `forbid_repeats`, every tuple with a repeated value; the latter is a
/// predicate and never materialised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct LinearSystem {
    field: FieldSpec,
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
    forbid_repeats: bool,
    /// Explicit discounts as index tuples, sorted.
    z: Option<Vec<Vec<usize>>>,
}

impl TryFrom<RawSystem> for LinearSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        let b = raw.b.iter().map(Element::coords).collect();
        let z = raw
            .z
            .map(|list| list.iter().map(|t| t.iter().map(Element::coords).collect()).collect());
        LinearSystem::new(raw.field, raw.a, b, raw.forbid_repeats, z)
    }
}

impl From<LinearSystem> for RawSystem {
    fn from(sys: LinearSystem) -> Self {
        let b = sys.b.iter().map(|c| Element::from_coords(c)).collect();
        let z = sys.z.as_ref().map(|list| {
            list.iter()
                .map(|t| t.iter().map(|&i| Element::from_coords(&sys.field.element(i))).collect())
                .collect()
        });
        RawSystem {
            field: sys.field,
            a: sys.a,
            b,
            forbid_repeats: sys.forbid_repeats,
            z,
        }
    }
}

impl LinearSystem {
    /// `b` and the tuples of `z` are elements given as coordinate lists.
    pub fn new(
        field: FieldSpec,
        a: Vec<Vec<i64>>,
        b: Vec<Vec<i64>>,
        forbid_repeats: bool,
        z: Option<Vec<Vec<Vec<i64>>>>,
    ) -> Result<Self> {
        field.validate()?;
        let k = a.len();
        if k == 0 {
            return invalid("A needs at least one row");
        }
        let r = a[0].len();
        if a.iter().any(|row| row.len() != r) {
            return invalid("rows of A differ in length");
        }
        if r < k + 1 {
            return invalid(format!("a {k} x {r} system needs r >= k + 1"));
        }
        if b.len() != k {
            return invalid(format!("b has {} entries, expected {k}", b.len()));
        }
        let moduli = field.moduli();
        let b = b
            .into_iter()
            .map(|c| {
                if c.len() != moduli.len() {
                    return invalid(format!("entry {c:?} of b has the wrong number of coordinates"));
                }
                Ok(c.iter()
                    .zip(&moduli)
                    .map(|(&x, m)| m.map_or(x, |m| x.rem_euclid(m as i64)))
                    .collect())
            })
            .collect::<Result<_>>()?;
        let z = match z {
            None => None,
            Some(list) => {
                let mut tuples = list
                    .iter()
                    .map(|t| {
                        if t.len() != r {
                            return invalid(format!("Z tuple {t:?} has length {}, expected {r}", t.len()));
                        }
                        t.iter()
                            .map(|e| {
                                field
                                    .index(e)
                                    .ok_or_else(|| Error::InvalidArgument(format!("{e:?} is not an element of F")))
                            })
                            .collect::<Result<Vec<usize>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                tuples.sort_unstable();
                tuples.dedup();
                Some(tuples)
            }
        };
        Ok(LinearSystem { field, a, b, forbid_repeats, z })
    }

    /// Single-coordinate right-hand side, no explicit discounts.
    pub fn scalar(field: FieldSpec, a: Vec<Vec<i64>>, b: Vec<i64>, forbid_repeats: bool) -> Result<Self> {
        Self::new(field, a, b.into_iter().map(|x| vec![x]).collect(), forbid_repeats, None)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("systems serialize")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn rhs(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn forbid_repeats(&self) -> bool {
        self.forbid_repeats
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn r(&self) -> usize {
        self.a[0].len()
    }

    /// `|A|`, the sum of absolute values of the entries.
    pub fn weight(&self) -> u64 {
        self.a.iter().flatten().map(|x| x.unsigned_abs()).sum()
    }

    /// Whether the index tuple `x` solves `Ax = b` (ignoring `Z`).
    pub fn satisfies(&self, x: &[usize]) -> bool {
        let elems: Vec<Vec<i64>> = x.iter().map(|&i| self.field.element(i)).collect();
        self.satisfies_elems(&elems)
    }

    fn satisfies_elems(&self, elems: &[Vec<i64>]) -> bool {
        let moduli = self.field.moduli();
        self.a.iter().zip(&self.b).all(|(row, rhs)| {
            moduli.iter().enumerate().all(|(c, m)| {
                let s: i128 = row.iter().zip(elems).map(|(&a, e)| a as i128 * e[c] as i128).sum();
                let diff = s - rhs[c] as i128;
                match m {
                    Some(m) => diff.rem_euclid(*m as i128) == 0,
                    None => diff == 0,
                }
            })
        })
    }

    /// Membership in `Z`.
    pub fn discounted(&self, x: &[usize]) -> bool {
        if self.forbid_repeats {
            let mut seen = FxHashSet::default();
            if !x.iter().all(|v| seen.insert(*v)) {
                return true;
            }
        }
        self.z.as_ref().is_some_and(|z| z.binary_search(&x.to_vec()).is_ok())
    }

    fn reduced_matrix(&self, columns: &[usize]) -> Vec<Vec<i64>> {
        self.a.iter().map(|row| columns.iter().map(|&j| row[j]).collect()).collect()
    }

    /// Whether the submatrix on `columns` maps `F^{|columns|}` onto `F^k`.
    fn columns_full_rank(&self, columns: &[usize]) -> Result<bool> {
        let k = self.k();
        let sub = self.reduced_matrix(columns);
        Ok(match &self.field {
            FieldSpec::Zp { p } => rank_mod_p(&sub, *p) == k,
            FieldSpec::Interval { .. } => rank_rational(&sub) == k,
            FieldSpec::Abelian { orders } => {
                for &o in orders {
                    if !surjective_mod(&sub, o)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Full rank, and still full rank after deleting any two columns.
    pub fn is_abundant(&self) -> Result<bool> {
        let r = self.r();
        let all: Vec<usize> = (0..r).collect();
        if !self.columns_full_rank(&all)? {
            return Ok(false);
        }
        for i in 0..r {
            for j in i + 1..r {
                let rest: Vec<usize> = (0..r).filter(|&c| c != i && c != j).collect();
                if !self.columns_full_rank(&rest)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Rank of `A_J` (columns in `deleted` removed), over `Z_p` or `Q`.
    pub fn rank_without(&self, deleted: &[usize]) -> Result<usize> {
        let kept: Vec<usize> = (0..self.r()).filter(|c| !deleted.contains(c)).collect();
        let sub = self.reduced_matrix(&kept);
        match &self.field {
            FieldSpec::Zp { p } => Ok(rank_mod_p(&sub, *p)),
            FieldSpec::Interval { .. } => Ok(rank_rational(&sub)),
            FieldSpec::Abelian { .. } => invalid("rank is not defined over an abelian group"),
        }
    }

    /// Largest `t` such that `A_J` has full rank for every `|J| = t`.
    pub fn full_rank_depth(&self) -> Result<usize> {
        let r = self.r();
        let mut t = 0;
        for j in 1..=r {
            for deleted in crate::subsets::k_subsets(r, j) {
                let kept: Vec<usize> = (1..=r).filter(|c| !deleted.contains(c)).map(|c| c - 1).collect();
                if !self.columns_full_rank(&kept)? {
                    return Ok(t);
                }
            }
            t = j;
        }
        Ok(t)
    }
}

/// `m_F(A)`: over a field or `[N]`, the maximum over `|J| >= 2` of
/// `(|J|-1)/(|J|-1+rank(A_J)-k)`, `A_J` being `A` with the columns in `J`
/// deleted; over an abelian group, `(k+t-1)/(t-1)` with `t` from
/// [`LinearSystem::full_rank_depth`].
pub fn m_f_a(sys: &LinearSystem) -> Result<Rational> {
    if !sys.is_abundant()? {
        return invalid("m_F(A) needs an abundant matrix");
    }
    let (k, r) = (sys.k() as i64, sys.r());
    if let FieldSpec::Abelian { .. } = sys.field() {
        let t = sys.full_rank_depth()? as i64;
        return Ok(rational::ratio(k + t - 1, t - 1));
    }
    let mut best: Option<Rational> = None;
    for size in 2..=r {
        for j in crate::subsets::k_subsets(r, size) {
            let deleted: Vec<usize> = j.iter().map(|c| c - 1).collect();
            let rank = sys.rank_without(&deleted)? as i64;
            let s = size as i64;
            let den = s - 1 + rank - k;
            if den <= 0 {
                return Err(Error::Internal("non-positive denominator for an abundant matrix".into()));
            }
            let value = rational::ratio(s - 1, den);
            if best.as_ref().is_none_or(|b| value > *b) {
                best = Some(value);
            }
        }
    }
    Ok(best.expect("r >= 2"))
}

/// Exact number of `x ∈ F^r` with `Ax = b`, `Z` ignored, by scanning `F^r`.
pub fn count_solutions(sys: &LinearSystem) -> Result<BigInt> {
    let mut count = 0u64;
    brute_force(sys, |_| count += 1)?;
    Ok(BigInt::from(count))
}

fn brute_force(sys: &LinearSystem, mut f: impl FnMut(&[usize])) -> Result<()> {
    let size = sys.field.size() as usize;
    let r = sys.r();
    let total = (size as u64).checked_pow(r as u32).unwrap_or(u64::MAX);
    check_limit("tuples in F^r", total, MAX_ENUMERATION)?;
    let elems: Vec<Vec<i64>> = (0..size).map(|i| sys.field.element(i)).collect();
    let mut x = vec![0usize; r];
    let mut current: Vec<Vec<i64>> = vec![elems[0].clone(); r];
    loop {
        if sys.satisfies_elems(&current) {
            f(&x);
        }
        // odometer, last coordinate fastest
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            x[i] += 1;
            if x[i] < size {
                current[i] = elems[x[i]].clone();
                break;
            }
            x[i] = 0;
            current[i] = elems[0].clone();
        }
    }
}

/// Every solution of `Ax = b` (ignoring `Z`) as index tuples in lexicographic
/// order. Prime fields and `[N]` solve for pivot coordinates; groups scan.
pub fn solutions(sys: &LinearSystem) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    match &sys.field {
        FieldSpec::Zp { p } => solve_mod_p(sys, *p, |x| out.push(x))?,
        FieldSpec::Interval { n } => solve_interval(sys, *n, |x| out.push(x))?,
        FieldSpec::Abelian { .. } => brute_force(sys, |x| out.push(x.to_vec()))?,
    }
    out.sort_unstable();
    Ok(out)
}

fn for_each_assignment(base: u64, len: usize, mut f: impl FnMut(&[u64])) -> Result<()> {
    let total = base.checked_pow(len as u32).unwrap_or(u64::MAX);
    check_limit("free-coordinate assignments", total, MAX_ENUMERATION)?;
    let mut digits = vec![0u64; len];
    loop {
        f(&digits);
        let mut i = len;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn solve_mod_p(sys: &LinearSystem, p: u64, mut f: impl FnMut(Vec<usize>)) -> Result<()> {
    let r = sys.r();
    let p = p as i128;
    let mut rows: Vec<Vec<i128>> = sys
        .a
        .iter()
        .zip(&sys.b)
        .map(|(row, rhs)| {
            let mut v: Vec<i128> = row.iter().map(|&x| (x as i128).rem_euclid(p)).collect();
            v.push((rhs[0] as i128).rem_euclid(p));
            v
        })
        .collect();
    let pivots = rref_mod_p(&mut rows, r, p);
    if rows.iter().skip(pivots.len()).any(|row| row[r] != 0) {
        return Ok(());
    }
    let free: Vec<usize> = (0..r).filter(|c| !pivots.contains(c)).collect();
    for_each_assignment(p as u64, free.len(), |digits| {
        let mut x = vec![0usize; r];
        for (&c, &d) in free.iter().zip(digits) {
            x[c] = d as usize;
        }
        for (i, &pc) in pivots.iter().enumerate() {
            let s: i128 = free.iter().map(|&c| rows[i][c] * x[c] as i128).sum();
            x[pc] = (rows[i][r] - s).rem_euclid(p) as usize;
        }
        f(x);
    })
}

fn solve_interval(sys: &LinearSystem, n: u64, mut f: impl FnMut(Vec<usize>)) -> Result<()> {
    let r = sys.r();
    let mut rows: Vec<Vec<Rational>> = sys
        .a
        .iter()
        .zip(&sys.b)
        .map(|(row, rhs)| {
            let mut v: Vec<Rational> = row.iter().map(|&x| rational::int(x)).collect();
            v.push(rational::int(rhs[0]));
            v
        })
        .collect();
    let pivots = rref_rational(&mut rows, r);
    if rows.iter().skip(pivots.len()).any(|row| !row[r].is_zero()) {
        return Ok(());
    }
    let free: Vec<usize> = (0..r).filter(|c| !pivots.contains(c)).collect();
    let upper = BigInt::from(n);
    for_each_assignment(n, free.len(), |digits| {
        let mut x = vec![0usize; r];
        for (&c, &d) in free.iter().zip(digits) {
            x[c] = d as usize;
        }
        for (i, &pc) in pivots.iter().enumerate() {
            let mut value = rows[i][r].clone();
            for &c in &free {
                value -= &rows[i][c] * rational::from_u64(x[c] as u64 + 1);
            }
            if !value.is_integer() || value.numer() < &BigInt::one() || value.numer() > &upper {
                return;
            }
            x[pc] = value.numer().to_usize().expect("in range") - 1;
        }
        f(x);
    })
}

/// Reduced row echelon form in place over `Z_p` on the first `cols` columns;
/// returns pivot columns.
fn rref_mod_p(rows: &mut [Vec<i128>], cols: usize, p: i128) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(found) = (row..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(row, found);
        let inv = mod_inverse(rows[row][c], p);
        for v in rows[row].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != row && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..rows[i].len() {
                    rows[i][j] = (rows[i][j] - factor * rows[row][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    pivots
}

fn rref_rational(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(found) = (row..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(row, found);
        let lead = rows[row][c].clone();
        for v in rows[row].iter_mut() {
            *v = &*v / &lead;
        }
        for i in 0..rows.len() {
            if i != row && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let delta = &factor * &rows[row][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    pivots
}

fn mod_inverse(a: i128, p: i128) -> i128 {
    let e = a.extended_gcd(&p);
    e.x.rem_euclid(p)
}

/// Rank over `Z_p`.
pub fn rank_mod_p(matrix: &[Vec<i64>], p: u64) -> usize {
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| (x as i128).rem_euclid(p as i128)).collect())
        .collect();
    rref_mod_p(&mut rows, cols, p as i128).len()
}

/// Rank over the rationals.
pub fn rank_rational(matrix: &[Vec<i64>]) -> usize {
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| rational::int(x)).collect())
        .collect();
    rref_rational(&mut rows, cols).len()
}

/// Whether the columns of `matrix`, read mod `m`, generate `Z_m^k`.
fn surjective_mod(matrix: &[Vec<i64>], m: u64) -> Result<bool> {
    if m == 1 {
        return Ok(true);
    }
    let k = matrix.len();
    let size = m.checked_pow(k as u32).unwrap_or(u64::MAX);
    check_limit("group closure", size, MAX_GROUP_CLOSURE)?;
    let cols = matrix.first().map_or(0, |r| r.len());
    let gens: Vec<Vec<u64>> = (0..cols)
        .map(|c| matrix.iter().map(|row| row[c].rem_euclid(m as i64) as u64).collect())
        .collect();
    let encode = |v: &[u64]| v.iter().fold(0u64, |acc, &x| acc * m + x);
    let mut seen = vec![false; size as usize];
    seen[0] = true;
    let mut stack = vec![vec![0u64; k]];
    let mut reached = 1u64;
    while let Some(v) = stack.pop() {
        for g in &gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| (a + b) % m).collect();
            let code = encode(&w) as usize;
            if !seen[code] {
                seen[code] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    Ok(reached == size)
}

/// Greatest common divisor of the `k × k` minors of `A`.
pub fn determinantal(a: &[Vec<i64>]) -> BigInt {
    let k = a.len();
    let r = a.first().map_or(0, |row| row.len());
    let mut acc = BigInt::zero();
    for cols in crate::subsets::k_subsets(r, k) {
        let sub: Vec<Vec<Rational>> = a
            .iter()
            .map(|row| cols.iter().map(|&c| rational::int(row[c - 1])).collect())
            .collect();
        acc = acc.gcd(&determinant(sub).to_integer());
    }
    acc
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            let factor = &m[i][c] / &m[c][c];
            for j in c..n {
                let delta = &factor * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

/// The `r`-partite `r`-graph `G(F, A, b, Z)`: part `i` holds ids
/// `(i-1)|F|+1 ..= i|F|`, and each solution `x ∉ Z` is the edge
/// `{(i-1)|F| + idx(x_i) + 1}`.
pub fn build_gfabz(sys: &LinearSystem) -> Result<Hypergraph> {
    let size = sys.field.size() as usize;
    let r = sys.r();
    check_limit("vertices of G(F,A,b,Z)", (r * size) as u64, MAX_FIELD_SIZE)?;
    let edges: Vec<Vec<usize>> = solutions(sys)?
        .into_iter()
        .filter(|x| !sys.discounted(x))
        .map(|x| x.iter().enumerate().map(|(i, &v)| i * size + v + 1).collect())
        .collect();
    Ok(Hypergraph::from_canonical(r * size, r, edges))
}

/// Whether no solution outside `Z` has all its values in `subset` (indices).
pub fn is_solution_free(sys: &LinearSystem, subset: &[usize]) -> Result<bool> {
    let inside: FxHashSet<usize> = subset.iter().copied().collect();
    Ok(solutions(sys)?
        .iter()
        .all(|x| sys.discounted(x) || !x.iter().all(|v| inside.contains(v))))
}

/// Number of solution-free subsets of `F`, for `|F| <= 26`.
pub fn count_solution_free_subsets(sys: &LinearSystem) -> Result<u64> {
    let size = sys.field.size();
    if size > 26 {
        return Err(Error::ResourceLimit(format!("2^{size} subsets is too many to scan")));
    }
    let mut masks: Vec<u32> = solutions(sys)?
        .iter()
        .filter(|x| !sys.discounted(x))
        .map(|x| x.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    Ok((0u32..1 << size).filter(|s| masks.iter().all(|&m| m & s != m)).count() as u64)
}

/// The `(ℓ-2) × ℓ` system forbidding `ℓ`-term progressions in `[N]`:
/// rows `x_i + x_{i+2} - 2x_{i+1} = 0`, columns ordered
/// `x_1, x_3, x_4, …, x_ℓ, x_2` so that `ℓ = 3` gives `A = (1, 1, -2)`.
/// Tuples with a repeated value are discounted.
pub fn ap_system(n: u64, ell: usize) -> Result<LinearSystem> {
    if ell < 3 {
        return invalid("progressions need ell >= 3");
    }
    let order: Vec<usize> = std::iter::once(0).chain(2..ell).chain(std::iter::once(1)).collect();
    let a: Vec<Vec<i64>> = (0..ell - 2)
        .map(|i| {
            let mut natural = vec![0i64; ell];
            natural[i] = 1;
            natural[i + 1] = -2;
            natural[i + 2] = 1;
            order.iter().map(|&c| natural[c]).collect()
        })
        .collect();
    LinearSystem::scalar(FieldSpec::Interval { n }, a, vec![0; ell - 2], true)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly greater than `bound`.
pub fn first_prime_above(bound: u64) -> u64 {
    (bound + 1..).find(|&q| is_prime(q)).expect("primes are unbounded")
}

/// Re-reads a system over `[N]` in `Z_p`, where `p` is the first prime above
/// `bound`, defaulting to `4 k! |A|^k N - 1` so that `p` lands in
/// `[4 k! |A|^k N, 8 k! |A|^k N]`.
pub fn embed_interval(sys: &LinearSystem, bound: Option<u64>) -> Result<LinearSystem> {
    let FieldSpec::Interval { n } = sys.field else {
        return invalid("only interval systems are embedded");
    };
    let k = sys.k();
    let default = || -> Option<u64> {
        let scale: BigInt = rational::factorial(k) * BigInt::from(sys.weight()).pow(k as u32) * BigInt::from(n) * 4;
        (scale - BigInt::one()).to_u64()
    };
    let bound = match bound {
        Some(b) => b,
        None => default().ok_or_else(|| Error::ResourceLimit("embedding prime overflows u64".into()))?,
    };
    let p = first_prime_above(bound);
    if p > MAX_FIELD_SIZE {
        return Err(Error::ResourceLimit(format!("embedding prime {p} exceeds the field size limit")));
    }
    let half = (p / 2) as i64;
    if sys.b.iter().any(|c| c[0].abs() > half) {
        return invalid("|b_i| must not exceed p/2");
    }
    let z = sys.z.as_ref().map(|list| {
        list.iter()
            .map(|t| t.iter().map(|&i| vec![i as i64 + 1]).collect())
            .collect()
    });
    LinearSystem::new(FieldSpec::Zp { p }, sys.a.clone(), sys.b.clone(), sys.forbid_repeats, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn zp(p: u64, a: Vec<Vec<i64>>, b: Vec<i64>) -> LinearSystem {
        LinearSystem::scalar(FieldSpec::Zp { p }, a, b, false).unwrap()
    }

    fn interval(n: u64, a: Vec<Vec<i64>>, b: Vec<i64>, forbid: bool) -> LinearSystem {
        LinearSystem::scalar(FieldSpec::Interval { n }, a, b, forbid).unwrap()
    }

    #[test]
    fn abundance_examples() {
        assert!(interval(9, vec![vec![1, 1, -1]], vec![0], false).is_abundant().unwrap());
        assert!(interval(9, vec![vec![1, 1, -2]], vec![0], false).is_abundant().unwrap());
        assert!(LinearSystem::scalar(FieldSpec::Zp { p: 5 }, vec![vec![1, 1]], vec![0], false)
            .unwrap()
            .is_abundant()
            .map(|a| !a)
            .unwrap());
        // a zero column: deleting the other two leaves nothing of rank 1
        assert!(!zp(5, vec![vec![1, 1, 0]], vec![0]).is_abundant().unwrap());
        // 2 is not invertible mod 2
        assert!(!zp(2, vec![vec![1, 1, -2]], vec![0]).is_abundant().unwrap());
    }

    #[test]
    fn m_f_examples() {
        assert_eq!(m_f_a(&ap_system(20, 3).unwrap()), Ok(int(2)));
        assert_eq!(m_f_a(&ap_system(20, 4).unwrap()), Ok(int(3)));
        assert_eq!(m_f_a(&ap_system(20, 5).unwrap()), Ok(int(4)));
        let sidon = interval(20, vec![vec![1, 1, -1, -1]], vec![0], true);
        assert_eq!(m_f_a(&sidon), Ok(ratio(3, 2)));
        assert!(m_f_a(&zp(5, vec![vec![1, 1, 0]], vec![0])).is_err());
    }

    #[test]
    fn abelian_m_f_uses_depth() {
        let sys = LinearSystem::new(
            FieldSpec::Abelian { orders: vec![3, 5] },
            vec![vec![1, 1, -1]],
            vec![vec![0, 0]],
            false,
            None,
        )
        .unwrap();
        assert_eq!(sys.full_rank_depth(), Ok(2));
        assert_eq!(m_f_a(&sys), Ok(int(2)));
        assert_eq!(count_solutions(&sys), Ok(BigInt::from(225)));
    }

    #[test]
    fn ap_system_shapes() {
        assert_eq!(ap_system(9, 3).unwrap().matrix(), &[vec![1, 1, -2]]);
        assert_eq!(ap_system(9, 4).unwrap().matrix(), &[vec![1, 1, 0, -2], vec![0, -2, 1, 1]]);
        assert!(ap_system(9, 2).is_err());
        // Z = the N constant progressions
        let sys = ap_system(9, 3).unwrap();
        let sols = solutions(&sys).unwrap();
        assert_eq!(sols.iter().filter(|x| sys.discounted(x)).count(), 9);
    }

    #[test]
    fn solution_counts() {
        assert_eq!(count_solutions(&zp(5, vec![vec![1, 1]], vec![0])), Ok(BigInt::from(5)));
        assert_eq!(count_solutions(&zp(7, vec![vec![1, 2, 3], vec![0, 1, 4]], vec![1, 2])), Ok(BigInt::from(7)));
        assert_eq!(count_solutions(&interval(6, vec![vec![1, 1]], vec![-1], false)), Ok(BigInt::zero()));
    }

    #[test]
    fn gfabz_examples() {
        let g = build_gfabz(&zp(3, vec![vec![1, 1]], vec![0])).unwrap();
        assert_eq!((g.n(), g.r(), g.edge_count()), (6, 2, 3));
        let sum_free = interval(4, vec![vec![1, 1, -1]], vec![0], false);
        let g = build_gfabz(&sum_free).unwrap();
        let tuples: Vec<Vec<usize>> = g
            .edges()
            .iter()
            .map(|e| e.iter().enumerate().map(|(i, v)| v - 4 * i).collect())
            .collect();
        let mut expected = vec![
            vec![1, 1, 2],
            vec![1, 2, 3],
            vec![2, 1, 3],
            vec![1, 3, 4],
            vec![3, 1, 4],
            vec![2, 2, 4],
        ];
        expected.sort();
        let mut tuples = tuples;
        tuples.sort();
        assert_eq!(tuples, expected);
        let strict = interval(4, vec![vec![1, 1, -1]], vec![0], true);
        assert_eq!(build_gfabz(&strict).unwrap().edge_count(), 4);
    }

    #[test]
    fn pivot_solving_matches_scanning() {
        let systems = [
            zp(7, vec![vec![1, 2, 3, 4], vec![0, 1, 1, 6]], vec![3, 2]),
            zp(5, vec![vec![0, 0, 1]], vec![4]),
            interval(7, vec![vec![1, 1, -1, -1]], vec![0], false),
            interval(8, vec![vec![2, 1, -3], vec![1, 0, -1]], vec![1, 0], false),
        ];
        for sys in &systems {
            let mut scanned = Vec::new();
            brute_force(sys, |x| scanned.push(x.to_vec())).unwrap();
            assert_eq!(solutions(sys).unwrap(), scanned);
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"field":{"kind":"interval","N":9},"A":[[1,1,-2]],"b":[0],"forbid_repeats":true}"#;
        let sys = LinearSystem::from_json(text).unwrap();
        assert_eq!(sys, ap_system(9, 3).unwrap());
        assert_eq!(LinearSystem::from_json(&sys.to_json()).unwrap(), sys);
        let group = r#"{"field":{"kind":"abelian","orders":[2,2]},"A":[[1,1,1]],"b":[[1,0]],"Z":[[[0,0],[0,0],[1,0]]]}"#;
        let sys = LinearSystem::from_json(group).unwrap();
        assert!(sys.discounted(&[0, 0, 2]));
        assert_eq!(LinearSystem::from_json(&sys.to_json()).unwrap(), sys);
        assert!(LinearSystem::from_json(r#"{"field":{"kind":"zp","p":6},"A":[[1,1]],"b":[0]}"#).is_err());
        assert!(LinearSystem::from_json(r#"{"field":{"kind":"zp","p":5},"A":[[1,1]],"b":[0,1]}"#).is_err());
    }

    #[test]
    fn progression_free_subsets_of_nine() {
        let direct = (0u32..1 << 9)
            .filter(|s| {
                let has = |x: u32| x >= 1 && x <= 9 && s >> (x - 1) & 1 == 1;
                !(1..=9).any(|a| (1..=4).any(|d| has(a) && has(a + d) && has(a + 2 * d)))
            })
            .count() as u64;
        assert_eq!(count_solution_free_subsets(&ap_system(9, 3).unwrap()), Ok(direct));
    }

    #[test]
    fn determinantal_and_embedding() {
        assert_eq!(determinantal(&[vec![1, 1, -2]]), BigInt::from(1));
        assert_eq!(determinantal(&[vec![2, 4, 6]]), BigInt::from(2));
        assert_eq!(determinantal(&[vec![1, 0, 1], vec![0, 1, 1]]), BigInt::from(1));
        assert_eq!(first_prime_above(10), 11);
        assert_eq!(first_prime_above(13), 17);
        let sys = ap_system(9, 3).unwrap();
        let emb = embed_interval(&sys, None).unwrap();
        let FieldSpec::Zp { p } = *emb.field() else { unreachable!() };
        assert!((4 * 4 * 9..=8 * 4 * 9).contains(&p));
        assert!(emb.is_abundant().unwrap());
        assert_eq!(m_f_a(&emb), m_f_a(&sys));
    }
}
