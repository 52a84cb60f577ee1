//! Isomorphism tests and canonical labellings of operation tables.

use std::cmp::Ordering;

use crate::perm::Permutation;
use crate::table::OpTable;

/// Per-element data preserved by every isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementInvariant {
    idempotent: bool,
    /// cycle type of the column map, or `None` if it is not a bijection
    column_cycles: Option<Vec<usize>>,
    column_fixed: usize,
    row_fixed: usize,
    row_image_size: usize,
    /// number of `y` with `y * x = x`
    absorbed_by: usize,
}

fn element_invariants(t: &OpTable) -> Vec<ElementInvariant> {
    let n = t.n();
    (0..n)
        .map(|x| {
            let column = t.column(x);
            let mut image = vec![false; n];
            for y in 0..n {
                image[t.get(x, y)] = true;
            }
            ElementInvariant {
                idempotent: t.get(x, x) == x,
                column_cycles: column.as_ref().map(Permutation::cycle_type),
                column_fixed: (0..n).filter(|&y| t.get(y, x) == y).count(),
                row_fixed: (0..n).filter(|&y| t.get(x, y) == y).count(),
                row_image_size: image.iter().filter(|&&b| b).count(),
                absorbed_by: (0..n).filter(|&y| t.get(y, x) == x).count(),
            }
        })
        .collect()
}

/// Backtracking search for structure-preserving bijections `left -> right`.
struct IsoSearch<'a> {
    left: &'a OpTable,
    right: &'a OpTable,
    left_inv: Vec<ElementInvariant>,
    right_inv: Vec<ElementInvariant>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    /// assigned left elements in assignment order
    assigned: Vec<usize>,
}

impl<'a> IsoSearch<'a> {
    fn new(left: &'a OpTable, right: &'a OpTable) -> Option<Self> {
        if left.n() != right.n() {
            return None;
        }
        let left_inv = element_invariants(left);
        let right_inv = element_invariants(right);
        let mut a = left_inv.clone();
        let mut b = right_inv.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
        let n = left.n();
        Some(IsoSearch {
            left,
            right,
            left_inv,
            right_inv,
            map: vec![None; n],
            used: vec![false; n],
            trail: Vec::new(),
            assigned: Vec::new(),
        })
    }

    /// Assigns `x -> y` and closes under the operation; false on conflict.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match self.map[x] {
                Some(existing) if existing == y => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used[y] || self.left_inv[x] != self.right_inv[y] {
                return false;
            }
            self.map[x] = Some(y);
            self.used[y] = true;
            self.trail.push(x);
            self.assigned.push(x);
            for i in 0..self.assigned.len() {
                let a = self.assigned[i];
                let sa = self.map[a].expect("assigned");
                for (p, q, sp, sq) in [(a, x, sa, y), (x, a, y, sa)] {
                    queue.push((self.left.get(p, q), self.right.get(sp, sq)));
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("non-empty trail");
            let y = self.map[x].take().expect("assigned");
            self.used[y] = false;
            self.assigned.pop();
        }
    }

    fn search(&mut self, found: &mut Vec<Permutation>, limit: usize) {
        if found.len() >= limit {
            return;
        }
        let Some(x) = (0..self.left.n()).find(|&x| self.map[x].is_none()) else {
            let images: Vec<usize> = self.map.iter().map(|m| m.expect("complete")).collect();
            let sigma = Permutation::from_images_unchecked(images);
            if self.left.relabel(&sigma) == *self.right {
                found.push(sigma);
            }
            return;
        };
        for y in 0..self.right.n() {
            if self.used[y] || self.left_inv[x] != self.right_inv[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) {
                self.search(found, limit);
            }
            self.undo_to(mark);
            if found.len() >= limit {
                return;
            }
        }
    }
}

/// All isomorphisms `left -> right`, up to `limit` of them.
pub fn isomorphisms(left: &OpTable, right: &OpTable, limit: usize) -> Vec<Permutation> {
    let mut found = Vec::new();
    if let Some(mut search) = IsoSearch::new(left, right) {
        search.search(&mut found, limit);
    }
    found
}

/// A bijection `s` with `s(a *1 b) = s(a) *2 s(b)`, if one exists.
pub fn is_isomorphic(left: &OpTable, right: &OpTable) -> Option<Permutation> {
    isomorphisms(left, right, 1).pop()
}

pub fn automorphism_count(t: &OpTable) -> usize {
    isomorphisms(t, t, usize::MAX).len()
}

/// Order in which table positions are compared when ranking relabellings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositionOrder {
    /// Flattened row-major order.
    RowMajor,
    /// Leading principal blocks first: shell `k` holds the positions whose
    /// larger coordinate is `k`. Every entry of shell `k` is fixed once the
    /// first `k + 1` labels are chosen, which makes pruning effective.
    Shell,
}

fn positions(n: usize, order: PositionOrder) -> Vec<(usize, usize, usize)> {
    // (row, col, number of labels needed to know both operands)
    match order {
        PositionOrder::RowMajor => (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c, r.max(c) + 1)))
            .collect(),
        PositionOrder::Shell => {
            let mut out = Vec::with_capacity(n * n);
            for k in 0..n {
                for r in 0..=k {
                    out.push((r, k, k + 1));
                }
                for c in 0..k {
                    out.push((k, c, k + 1));
                }
            }
            out
        }
    }
}

/// Relabelling search state: `order[i]` is the original element given label
/// `i`.
struct LabelSearch<'a> {
    table: &'a OpTable,
    positions: Vec<(usize, usize, usize)>,
    order: Vec<usize>,
    label: Vec<Option<usize>>,
}

enum Partial {
    Less,
    Greater,
    Undetermined,
    Equal,
}

impl<'a> LabelSearch<'a> {
    fn new(table: &'a OpTable, order: PositionOrder) -> Self {
        LabelSearch {
            table,
            positions: positions(table.n(), order),
            order: Vec::with_capacity(table.n()),
            label: vec![None; table.n()],
        }
    }

    /// Compares the partially relabelled table against `reference`
    /// (flattened row-major).
    fn compare(&self, reference: &[usize]) -> Partial {
        let n = self.table.n();
        let k = self.order.len();
        for &(r, c, needed) in &self.positions {
            let target = reference[r * n + c];
            if needed > k {
                return Partial::Undetermined;
            }
            let v = self.table.get(self.order[r], self.order[c]);
            match self.label[v] {
                Some(l) => match l.cmp(&target) {
                    Ordering::Less => return Partial::Less,
                    Ordering::Greater => return Partial::Greater,
                    Ordering::Equal => {}
                },
                // an unlabelled value will receive a label >= k
                None => {
                    return if k > target {
                        Partial::Greater
                    } else {
                        Partial::Undetermined
                    }
                }
            }
        }
        Partial::Equal
    }

    fn relabelled(&self) -> Vec<usize> {
        let n = self.table.n();
        let mut out = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                out[r * n + c] = self.label[self.table.get(self.order[r], self.order[c])]
                    .expect("complete labelling");
            }
        }
        out
    }

    fn push(&mut self, x: usize) {
        self.label[x] = Some(self.order.len());
        self.order.push(x);
    }

    fn pop(&mut self) {
        let x = self.order.pop().expect("non-empty");
        self.label[x] = None;
    }

    fn minimise(&mut self, best: &mut Option<(Vec<usize>, Vec<usize>)>) {
        let n = self.table.n();
        if let Some((b, _)) = best.as_ref() {
            if let Partial::Greater = self.compare(b) {
                return;
            }
        }
        if self.order.len() == n {
            // rank by the search's position order, not by the row-major vector
            let better = best
                .as_ref()
                .is_none_or(|(b, _)| matches!(self.compare(b), Partial::Less));
            if better {
                *best = Some((self.relabelled(), self.order.clone()));
            }
            return;
        }
        for x in 0..n {
            if self.label[x].is_none() {
                self.push(x);
                self.minimise(best);
                self.pop();
            }
        }
    }

    /// True if some relabelling is strictly smaller than `reference`.
    fn find_smaller(&mut self, reference: &[usize]) -> bool {
        let n = self.table.n();
        match self.compare(reference) {
            Partial::Less => return true,
            Partial::Greater | Partial::Equal => return false,
            Partial::Undetermined => {}
        }
        debug_assert!(self.order.len() < n);
        for x in 0..n {
            if self.label[x].is_none() {
                self.push(x);
                let smaller = self.find_smaller(reference);
                self.pop();
                if smaller {
                    return true;
                }
            }
        }
        false
    }
}

/// A table in canonical labelling together with the relabelling used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalTable {
    pub table: OpTable,
    /// maps each original element to its canonical label
    pub labeling: Permutation,
}

/// The row-major lexicographic minimum over all relabellings.
///
/// Exact branch and bound; exponential in the worst case (the trivial table
/// visits all `n!` labellings), intended for `n` up to about 8.
pub fn canonical_form(t: &OpTable) -> CanonicalTable {
    minimum_relabelling(t, PositionOrder::RowMajor)
}

pub fn minimum_relabelling(t: &OpTable, order: PositionOrder) -> CanonicalTable {
    let mut search = LabelSearch::new(t, order);
    let mut best = None;
    search.minimise(&mut best);
    let (_, order) = best.expect("at least one labelling");
    let mut labels = vec![0; t.n()];
    for (label, &x) in order.iter().enumerate() {
        labels[x] = label;
    }
    let labeling = Permutation::from_images_unchecked(labels);
    CanonicalTable {
        table: t.relabel(&labeling),
        labeling,
    }
}

/// True if no relabelling of `t` is smaller than `t` under `order`.
pub fn is_orbit_minimal(t: &OpTable, order: PositionOrder) -> bool {
    let reference: Vec<usize> = t.flat().collect();
    !LabelSearch::new(t, order).find_smaller(&reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn r3() -> OpTable {
        OpTable::from_rows(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    fn j3() -> OpTable {
        OpTable::from_rows(vec![vec![0, 0, 0], vec![2, 1, 1], vec![1, 2, 2]]).unwrap()
    }

    fn brute_min(t: &OpTable, order: PositionOrder) -> Vec<usize> {
        let pos = positions(t.n(), order);
        all_permutations(t.n())
            .into_iter()
            .map(|p| {
                let r = t.relabel(&Permutation::from_images(p).unwrap());
                pos.iter().map(|&(a, b, _)| r.get(a, b)).collect::<Vec<_>>()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn isomorphism_basics() {
        assert!(is_isomorphic(&r3(), &j3()).is_none());
        assert!(
            is_isomorphic(&r3(), &r3()).unwrap().is_identity() || automorphism_count(&r3()) > 1
        );
        let sigma = Permutation::from_images(vec![2, 0, 1]).unwrap();
        let moved = j3().relabel(&sigma);
        let found = is_isomorphic(&j3(), &moved).unwrap();
        assert_eq!(j3().relabel(&found), moved);
        assert!(is_isomorphic(&r3(), &OpTable::trivial(4).unwrap()).is_none());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&OpTable::trivial(4).unwrap()), 24);
        // Aut(R3) is the affine group of Z3
        assert_eq!(automorphism_count(&r3()), 6);
        assert_eq!(automorphism_count(&j3()), 2);
    }

    #[test]
    fn canonical_form_matches_brute_force() {
        let r3j3 = OpTable::from_rows(vec![vec![0, 2, 1], vec![1, 1, 0], vec![2, 0, 2]]).unwrap();
        let alex = OpTable::from_fn(5, |a, b| (2 * a + 4 * b) % 5).unwrap();
        for t in [r3(), j3(), r3j3, alex, OpTable::trivial(3).unwrap()] {
            for order in [PositionOrder::RowMajor, PositionOrder::Shell] {
                let canon = minimum_relabelling(&t, order);
                let pos = positions(t.n(), order);
                let flat: Vec<usize> = pos.iter().map(|&(a, b, _)| canon.table.get(a, b)).collect();
                assert_eq!(flat, brute_min(&t, order));
                assert_eq!(t.relabel(&canon.labeling), canon.table);
            }
        }
    }

    #[test]
    fn canonical_form_is_constant_on_orbits() {
        let canon = canonical_form(&r3());
        for p in all_permutations(3) {
            let moved = r3().relabel(&Permutation::from_images(p).unwrap());
            assert_eq!(canonical_form(&moved).table, canon.table);
        }
        let t = OpTable::trivial(4).unwrap();
        assert_eq!(canonical_form(&t).table, t);
    }

    #[test]
    fn orbit_minimality() {
        let j = j3();
        let minimal = minimum_relabelling(&j, PositionOrder::Shell).table;
        assert!(is_orbit_minimal(&minimal, PositionOrder::Shell));
        let count = all_permutations(3)
            .into_iter()
            .map(|p| j.relabel(&Permutation::from_images(p).unwrap()))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|t| is_orbit_minimal(t, PositionOrder::Shell))
            .count();
        assert_eq!(count, 1);
    }
}
