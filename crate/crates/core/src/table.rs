//! Finite binary operations stored as Cayley tables, and the axiom checks
//! that classify them.
//!
//! Rows are the left operand: `get(a, b)` is `a * b`. The column at `b` is the
//! map `y -> y * b`, which is a permutation exactly when the table is a right
//! quasigroup.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{lcm, Permutation};

/// Largest carrier supported by the `u16` entry storage.
pub const MAX_ORDER: usize = u16::MAX as usize;

/// Exhaustive triple checks switch to rayon above this carrier size.
const PARALLEL_THRESHOLD: usize = 24;

/// An `n x n` operation table over `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    n: usize,
    entries: Vec<u16>,
}

/// Which axioms hold, and the resulting class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub idempotent: bool,
    pub right_quasigroup: bool,
    pub self_distributive: bool,
    pub classification: Classification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    Quandle,
    Rack,
    IdempotentRightQuasigroup,
    RightQuasigroup,
    IdempotentGroupoid,
    Groupoid,
}

impl Classification {
    pub fn from_axioms(idempotent: bool, right_quasigroup: bool, self_distributive: bool) -> Self {
        match (idempotent, right_quasigroup, self_distributive) {
            (true, true, true) => Classification::Quandle,
            (false, true, true) => Classification::Rack,
            (true, true, false) => Classification::IdempotentRightQuasigroup,
            (false, true, false) => Classification::RightQuasigroup,
            (true, false, _) => Classification::IdempotentGroupoid,
            (false, false, _) => Classification::Groupoid,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Quandle => "quandle",
            Classification::Rack => "rack",
            Classification::IdempotentRightQuasigroup => "idempotent-right-quasigroup",
            Classification::RightQuasigroup => "right-quasigroup",
            Classification::IdempotentGroupoid => "idempotent-groupoid",
            Classification::Groupoid => "groupoid",
        }
    }

    pub fn is_rack(self) -> bool {
        matches!(self, Classification::Quandle | Classification::Rack)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exponent sign of one step in a left-normed word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The group generated by the inner maps `S_x`.
#[derive(Clone, Debug)]
pub struct InnerGroup {
    /// Distinct inner maps, in order of first appearance by column.
    pub generators: Vec<Permutation>,
    /// All elements, sorted.
    pub elements: Vec<Permutation>,
}

impl InnerGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

impl OpTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (c, value) in row.into_iter().enumerate() {
                if value >= n {
                    return Err(Error::EntryOutOfRange {
                        row: r,
                        col: c,
                        value,
                        n,
                    });
                }
                entries.push(value as u16);
            }
        }
        Ok(OpTable { n, entries })
    }

    /// Like [`OpTable::from_rows`] but with the size stated separately, as in
    /// serialized documents.
    pub fn from_sized_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        Self::from_rows(rows)
    }

    pub fn from_fn(n: usize, mut op: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        check_order(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let value = op(a, b);
                if value >= n {
                    return Err(Error::EntryOutOfRange {
                        row: a,
                        col: b,
                        value,
                        n,
                    });
                }
                entries.push(value as u16);
            }
        }
        Ok(OpTable { n, entries })
    }

    /// `x * y = x`.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::from_fn(n, |a, _| a)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.n + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// Row-major flattened entries.
    pub fn flat(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&v| v as usize)
    }

    /// Canonical byte encoding: the size then each entry, little-endian `u16`.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + 2 * self.entries.len());
        out.extend_from_slice(&(self.n as u16).to_le_bytes());
        for &e in &self.entries {
            out.extend_from_slice(&e.to_le_bytes());
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.get(a, b) == a))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    pub(crate) fn check_same_size(&self, other: &OpTable) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// The column map `y -> y * b`, if it is a bijection.
    pub fn column(&self, b: usize) -> Option<Permutation> {
        let images: Vec<usize> = (0..self.n).map(|a| self.get(a, b)).collect();
        Permutation::from_images(images).ok()
    }

    /// The relabelled table `(s a) *' (s b) = s(a * b)`.
    pub fn relabel(&self, sigma: &Permutation) -> OpTable {
        assert_eq!(sigma.len(), self.n);
        let mut entries = vec![0u16; self.entries.len()];
        for a in 0..self.n {
            for b in 0..self.n {
                entries[sigma.apply(a) * self.n + sigma.apply(b)] =
                    sigma.apply(self.get(a, b)) as u16;
            }
        }
        OpTable { n: self.n, entries }
    }

    /// Restriction to a subset closed under the operation, relabelled in
    /// increasing order of the subset.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> Result<OpTable> {
        let elems: Vec<usize> = subset.iter().copied().collect();
        let mut position = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            self.check_index(x)?;
            position[x] = i;
        }
        OpTable::from_fn(elems.len(), |i, j| {
            let v = self.get(elems[i], elems[j]);
            // out-of-subset products surface as an out-of-range entry
            if position[v] == usize::MAX {
                elems.len()
            } else {
                position[v]
            }
        })
    }

    // ---- axioms -------------------------------------------------------------

    pub fn first_non_idempotent(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.get(x, x) != x)
    }

    pub fn is_idempotent(&self) -> bool {
        self.first_non_idempotent().is_none()
    }

    /// First column that fails to be a bijection.
    pub fn first_non_bijective_column(&self) -> Option<usize> {
        let mut seen = vec![0usize; self.n];
        for b in 0..self.n {
            for a in 0..self.n {
                let v = self.get(a, b);
                if seen[v] == b + 1 {
                    return Some(b);
                }
                seen[v] = b + 1;
            }
        }
        None
    }

    pub fn is_right_quasigroup(&self) -> bool {
        self.first_non_bijective_column().is_none()
    }

    /// Lexicographically first `(a, b, c)` with `(a*b)*c != (a*c)*(b*c)`.
    pub fn first_non_distributive_triple(&self) -> Option<(usize, usize, usize)> {
        first_violation(self.n, |a, b, c| {
            self.get(self.get(a, b), c) != self.get(self.get(a, c), self.get(b, c))
        })
    }

    pub fn is_self_distributive(&self) -> bool {
        self.first_non_distributive_triple().is_none()
    }

    pub fn axioms_report(&self) -> AxiomReport {
        let idempotent = self.is_idempotent();
        let right_quasigroup = self.is_right_quasigroup();
        let self_distributive = self.is_self_distributive();
        AxiomReport {
            idempotent,
            right_quasigroup,
            self_distributive,
            classification: Classification::from_axioms(
                idempotent,
                right_quasigroup,
                self_distributive,
            ),
        }
    }

    pub fn classification(&self) -> Classification {
        self.axioms_report().classification
    }

    pub fn is_quandle(&self) -> bool {
        self.classification() == Classification::Quandle
    }

    pub fn is_rack(&self) -> bool {
        self.is_right_quasigroup() && self.is_self_distributive()
    }

    pub(crate) fn require_right_quasigroup(&self) -> Result<()> {
        match self.first_non_bijective_column() {
            None => Ok(()),
            Some(column) => Err(Error::NotRightQuasigroup { column }),
        }
    }

    pub(crate) fn require_quandle(&self) -> Result<()> {
        if self.is_quandle() {
            Ok(())
        } else {
            Err(Error::NotQuandle)
        }
    }

    // ---- derived operations -------------------------------------------------

    /// The operation `*^-1` with `(a * b) *^-1 b = (a *^-1 b) * b = a`.
    pub fn right_inverse(&self) -> Result<OpTable> {
        self.require_right_quasigroup()?;
        let n = self.n;
        let mut entries = vec![0u16; n * n];
        for b in 0..n {
            for a in 0..n {
                entries[self.get(a, b) * n + b] = a as u16;
            }
        }
        Ok(OpTable { n, entries })
    }

    /// `S_x(y) = y * x`.
    pub fn inner_map(&self, x: usize) -> Result<Permutation> {
        self.check_index(x)?;
        self.require_right_quasigroup()?;
        Ok(self
            .column(x)
            .expect("right quasigroup columns are bijections"))
    }

    pub fn inner_maps(&self) -> Result<Vec<Permutation>> {
        (0..self.n).map(|x| self.inner_map(x)).collect()
    }

    /// Closure of `{S_x}` under composition.
    pub fn inner_group(&self) -> Result<InnerGroup> {
        let maps = self.inner_maps()?;
        let mut generators: Vec<Permutation> = Vec::new();
        for m in maps {
            if !generators.contains(&m) {
                generators.push(m);
            }
        }
        let mut elements: BTreeSet<Permutation> = BTreeSet::new();
        let identity = Permutation::identity(self.n);
        elements.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in &generators {
                let q = p.then(g);
                if elements.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        Ok(InnerGroup {
            generators,
            elements: elements.into_iter().collect(),
        })
    }

    pub fn is_involutory(&self) -> Result<bool> {
        Ok(self.inner_maps()?.iter().all(|s| s.then(s).is_identity()))
    }

    /// Least common multiple of the inner-map orders.
    pub fn inner_exponent(&self) -> Result<usize> {
        Ok(self
            .inner_maps()?
            .iter()
            .map(Permutation::order)
            .fold(1, lcm))
    }

    /// Folds `((base *^e1 a1) *^e2 a2) ...` left to right.
    pub fn evaluate_left_normed(&self, base: usize, suffix: &[(usize, Sign)]) -> Result<usize> {
        self.check_index(base)?;
        for &(x, _) in suffix {
            self.check_index(x)?;
        }
        let needs_inverse = suffix.iter().any(|&(_, s)| s == Sign::Minus);
        let inverse = if needs_inverse {
            Some(self.right_inverse()?)
        } else {
            self.require_right_quasigroup()?;
            None
        };
        Ok(suffix.iter().fold(base, |acc, &(x, sign)| match sign {
            Sign::Plus => self.get(acc, x),
            Sign::Minus => inverse.as_ref().expect("computed above").get(acc, x),
        }))
    }

    /// Least superset of `seed` closed under `*` and `*^-1`.
    pub fn subquandle_closure(&self, seed: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        for &x in seed {
            self.check_index(x)?;
        }
        if !self.is_rack() {
            return Err(Error::NotRack);
        }
        let inverse = self.right_inverse()?;
        Ok(self.closure_with(&inverse, seed))
    }

    fn closure_with(&self, inverse: &OpTable, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut members = vec![false; self.n];
        let mut list: Vec<usize> = Vec::new();
        for &x in seed {
            members[x] = true;
            list.push(x);
        }
        let mut processed = 0;
        while processed < list.len() {
            let a = list[processed];
            processed += 1;
            for i in 0..processed {
                let b = list[i];
                for v in [
                    self.get(a, b),
                    self.get(b, a),
                    inverse.get(a, b),
                    inverse.get(b, a),
                ] {
                    if !members[v] {
                        members[v] = true;
                        list.push(v);
                    }
                }
            }
        }
        list.into_iter().collect()
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.rank_witness()?.len())
    }

    /// A smallest generating set; subsets are searched by size, then
    /// lexicographically.
    pub fn rank_witness(&self) -> Result<Vec<usize>> {
        self.require_quandle()?;
        let inverse = self.right_inverse()?;
        // every orbit of the inner group needs at least one generator
        let orbits = self.orbit_count()?;
        for k in orbits.max(1)..=self.n {
            let mut subset: Vec<usize> = (0..k).collect();
            loop {
                let seed: BTreeSet<usize> = subset.iter().copied().collect();
                if self.closure_with(&inverse, &seed).len() == self.n {
                    return Ok(subset);
                }
                if !next_combination(&mut subset, self.n) {
                    break;
                }
            }
        }
        unreachable!("the full carrier generates itself")
    }

    /// Number of orbits of the inner group acting on the carrier.
    pub fn orbit_count(&self) -> Result<usize> {
        let maps = self.inner_maps()?;
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for s in &maps {
            for y in 0..self.n {
                let (a, b) = (find(&mut parent, y), find(&mut parent, s.apply(y)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        Ok((0..self.n).filter(|&x| find(&mut parent, x) == x).count())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyCarrier)
    } else if n > MAX_ORDER {
        Err(Error::CarrierTooLarge(n))
    } else {
        Ok(())
    }
}

/// Lexicographically first triple in `[0, n)^3` satisfying `bad`.
pub(crate) fn first_violation<F>(n: usize, bad: F) -> Option<(usize, usize, usize)>
where
    F: Fn(usize, usize, usize) -> bool + Sync,
{
    let scan_row =
        |a: usize| (0..n).find_map(|b| (0..n).find(|&c| bad(a, b, c)).map(|c| (a, b, c)));
    if n >= PARALLEL_THRESHOLD {
        (0..n).into_par_iter().find_map_first(scan_row)
    } else {
        (0..n).find_map(scan_row)
    }
}

/// Advances `subset` (strictly increasing, over `[0, n)`) to the next
/// combination of the same size; false when exhausted.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpTable(n={}, rows={:?})", self.n, self.rows())
    }
}

impl fmt::Display for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.n.saturating_sub(1)).to_string().len();
        for row in self.entries.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> OpTable {
        OpTable::from_rows(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    fn j3() -> OpTable {
        OpTable::from_rows(vec![vec![0, 0, 0], vec![2, 1, 1], vec![1, 2, 2]]).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            OpTable::from_rows(vec![vec![0, 1], vec![0, 5]]),
            Err(Error::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 5,
                n: 2
            })
        );
        assert!(matches!(
            OpTable::from_rows(vec![vec![0, 1], vec![0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(OpTable::from_rows(vec![]), Err(Error::EmptyCarrier));
        assert!(OpTable::from_sized_rows(3, vec![vec![0]]).is_err());
        let one = OpTable::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(one.n(), 1);
        assert!(one.is_quandle());
    }

    #[test]
    fn classification_of_small_tables() {
        assert_eq!(r3().classification(), Classification::Quandle);
        assert_eq!(
            OpTable::trivial(5).unwrap().classification(),
            Classification::Quandle
        );
        // printed product of R3 and J3
        let r3j3 = OpTable::from_rows(vec![vec![0, 2, 1], vec![1, 1, 0], vec![2, 0, 2]]).unwrap();
        let report = r3j3.axioms_report();
        assert!(report.idempotent && report.right_quasigroup && !report.self_distributive);
        assert_eq!(
            report.classification,
            Classification::IdempotentRightQuasigroup
        );
        // x * y = y + 1 mod 2: a rack that is not idempotent
        let shift = OpTable::from_rows(vec![vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(shift.classification(), Classification::Rack);
        let constant = OpTable::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(constant.classification(), Classification::Groupoid);
    }

    #[test]
    fn right_inverse_examples() {
        assert_eq!(r3().right_inverse().unwrap(), r3());
        let t = OpTable::trivial(4).unwrap();
        assert_eq!(t.right_inverse().unwrap(), t);
        let alex2 = OpTable::from_fn(5, |a, b| (2 * a + 4 * b) % 5).unwrap();
        let alex3 = OpTable::from_fn(5, |a, b| (3 * a + 3 * b) % 5).unwrap();
        let inv = alex2.right_inverse().unwrap();
        assert_eq!(inv, alex3);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(inv.get(alex2.get(a, b), b), a);
                assert_eq!(alex2.get(inv.get(a, b), b), a);
            }
        }
        let constant = OpTable::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            constant.right_inverse(),
            Err(Error::NotRightQuasigroup { column: 0 })
        );
    }

    #[test]
    fn inner_maps_and_group() {
        assert_eq!(r3().inner_map(0).unwrap().images(), &[0, 2, 1]);
        assert_eq!(j3().inner_map(0).unwrap().images(), &[0, 2, 1]);
        assert!(OpTable::trivial(3)
            .unwrap()
            .inner_map(2)
            .unwrap()
            .is_identity());
        assert!(matches!(
            r3().inner_map(3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(
            OpTable::trivial(4).unwrap().inner_group().unwrap().order(),
            1
        );
        // three transpositions generate S3 acting on three points
        let inn = r3().inner_group().unwrap();
        assert_eq!(inn.order(), 6);
        assert_eq!(inn.generators.len(), 3);
        assert_eq!(j3().inner_group().unwrap().order(), 2);
    }

    #[test]
    fn involutory() {
        assert!(r3().is_involutory().unwrap());
        assert!(OpTable::trivial(3).unwrap().is_involutory().unwrap());
        let alex2 = OpTable::from_fn(5, |a, b| (2 * a + 4 * b) % 5).unwrap();
        assert!(!alex2.is_involutory().unwrap());
    }

    #[test]
    fn left_normed_words() {
        let t = r3();
        assert_eq!(t.evaluate_left_normed(0, &[]).unwrap(), 0);
        assert_eq!(t.evaluate_left_normed(0, &[(1, Sign::Plus)]).unwrap(), 2);
        assert_eq!(
            t.evaluate_left_normed(0, &[(1, Sign::Plus), (1, Sign::Minus)])
                .unwrap(),
            0
        );
        assert!(t.evaluate_left_normed(0, &[(7, Sign::Plus)]).is_err());
    }

    #[test]
    fn closures_and_rank() {
        let t = r3();
        assert_eq!(t.subquandle_closure(&set(&[1])).unwrap(), set(&[1]));
        assert_eq!(
            t.subquandle_closure(&set(&[0, 1])).unwrap(),
            set(&[0, 1, 2])
        );
        assert_eq!(
            t.subquandle_closure(&set(&[0, 1, 2])).unwrap(),
            set(&[0, 1, 2])
        );
        assert_eq!(t.rank().unwrap(), 2);
        assert_eq!(OpTable::trivial(4).unwrap().rank().unwrap(), 4);
        let r5 = OpTable::from_fn(5, |a, b| (2 * b + 5 - a) % 5).unwrap();
        assert_eq!(r5.rank().unwrap(), 2);
        let r3j3 = OpTable::from_rows(vec![vec![0, 2, 1], vec![1, 1, 0], vec![2, 0, 2]]).unwrap();
        assert_eq!(r3j3.subquandle_closure(&set(&[0])), Err(Error::NotRack));
        assert_eq!(r3j3.rank(), Err(Error::NotQuandle));
    }

    #[test]
    fn encoding_is_injective_on_examples() {
        assert_ne!(r3().encode(), j3().encode());
        assert_eq!(r3().encode().len(), 2 + 2 * 9);
    }

    #[test]
    fn restriction() {
        let t = j3();
        let sub = t.restrict(&set(&[1, 2])).unwrap();
        assert!(sub.is_trivial());
        assert!(r3().restrict(&set(&[0, 1])).is_err());
    }
}
