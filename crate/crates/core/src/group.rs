//! Finite groups as Cayley tables, with the brute-force queries the quandle
//! constructions need: automorphisms, centre, commutator subgroup, quotients
//! and isomorphism tests.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation};

/// A group on `{0, .., n-1}` given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

/// A bijective homomorphism of a group onto itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    images: Permutation,
}

impl GroupAutomorphism {
    pub fn new(group: &FiniteGroup, images: Permutation) -> Result<Self> {
        if images.len() != group.order() || !group.is_homomorphism_to(group, images.images()) {
            return Err(Error::NotAutomorphism);
        }
        Ok(GroupAutomorphism { images })
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupAutomorphism {
            images: Permutation::identity(group.order()),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images.apply(x)
    }

    pub fn permutation(&self) -> &Permutation {
        &self.images
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            images: self.images.then(&other.images),
        }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        GroupAutomorphism {
            images: self.images.inverse(),
        }
    }

    pub fn order(&self) -> usize {
        self.images.order()
    }
}

impl FiniteGroup {
    /// Validates identity, inverses and associativity exhaustively.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut table = Vec::with_capacity(n * n);
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
                table.push(value);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| Error::NotGroup(format!("element {x} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            n,
            table,
            identity,
            inverses,
        })
    }

    /// Builds a group from an element list closed under `mul`, labelling
    /// elements by their position in `elements`.
    pub fn from_elements<T: PartialEq>(elements: &[T], mul: impl Fn(&T, &T) -> T) -> Result<Self> {
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let p = mul(a, b);
                let idx = elements
                    .iter()
                    .position(|e| *e == p)
                    .ok_or_else(|| Error::NotGroup("element list is not closed".into()))?;
                table.push(idx);
            }
        }
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        Self::from_flat(n, table)
    }

    /// The group generated by permutations, multiplied as "left factor
    /// first". Elements are sorted, so the identity gets label 0.
    pub fn from_permutation_generators(generators: &[Permutation]) -> Result<Self> {
        let degree = generators.first().map_or(1, Permutation::len);
        let mut elements: BTreeSet<Permutation> = BTreeSet::new();
        let id = Permutation::identity(degree);
        elements.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = p.then(g);
                if elements.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let elements: Vec<Permutation> = elements.into_iter().collect();
        Self::from_elements(&elements, |a, b| a.then(b))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Addition modulo `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteGroup {
            n,
            table,
            identity: 0,
            inverses: (0..n).map(|x| (n - x) % n).collect(),
        }
    }

    /// Dihedral group of order `2m`: element `i + m*j` is `r^i s^j`.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 1);
        let encode = |i: usize, j: usize| i + m * j;
        let rows = (0..2 * m)
            .map(|a| {
                (0..2 * m)
                    .map(|b| {
                        let (i, j) = (a % m, a / m);
                        let (k, l) = (b % m, b / m);
                        let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                        encode(rot, (j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(rows).expect("dihedral table is a group")
    }

    /// Dicyclic group of order `4m`: `a^{2m} = 1`, `x^2 = a^m`,
    /// `x a x^-1 = a^-1`. Element `i + 2m*j` is `a^i x^j`.
    pub fn dicyclic(m: usize) -> Self {
        assert!(m >= 1);
        let q = 2 * m;
        let product = |a: usize, b: usize| {
            let (i, j) = (a % q, a / q);
            let (k, l) = (b % q, b / q);
            if j == 0 {
                (i + k) % q + q * l
            } else if l == 0 {
                (i + q - k) % q + q
            } else {
                // a^i x a^k x = a^{i-k} x^2 = a^{i-k+m}
                (i + q - k + m) % q
            }
        };
        let rows = (0..2 * q)
            .map(|a| (0..2 * q).map(|b| product(a, b)).collect())
            .collect();
        Self::from_table(rows).expect("dicyclic table is a group")
    }

    pub fn quaternion8() -> Self {
        Self::dicyclic(2)
    }

    /// Symmetric group on `degree <= 4` points.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 || degree > 4 {
            return Err(Error::NotGroup(format!(
                "symmetric groups are provided for degree 1..=4, not {degree}"
            )));
        }
        let perms: Vec<Permutation> = all_permutations(degree)
            .into_iter()
            .map(Permutation::from_images_unchecked)
            .collect();
        Self::from_elements(&perms, |a, b| a.then(b))
    }

    pub fn alternating4() -> Self {
        let perms: Vec<Permutation> = all_permutations(4)
            .into_iter()
            .map(Permutation::from_images_unchecked)
            .filter(|p| p.cycle_type().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0)
            .collect();
        Self::from_elements(&perms, |a, b| a.then(b)).expect("A4 is a group")
    }

    /// Pairs `(g, h)` flattened as `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, k) = (g.n, h.n);
        let n = m * k;
        let table = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                g.mul(a / k, b / k) * k + h.mul(a % k, b % k)
            })
            .collect();
        FiniteGroup {
            n,
            table,
            identity: g.identity * k + h.identity,
            inverses: (0..n).map(|a| g.inv(a / k) * k + h.inv(a % k)).collect(),
        }
    }

    /// `N x| Z_m` where the generator of `Z_m` acts by `phi`
    /// (`phi^m` must be the identity). Element `(x, i)` is `x * m + i`, with
    /// `(x, i)(y, j) = (x phi^i(y), i + j)`.
    pub fn semidirect_cyclic(
        normal: &FiniteGroup,
        m: usize,
        phi: &GroupAutomorphism,
    ) -> Result<Self> {
        let mut powers = vec![GroupAutomorphism::identity(normal)];
        for _ in 1..=m {
            let next = powers.last().expect("non-empty").then(phi);
            powers.push(next);
        }
        if !powers[m].images.is_identity() {
            return Err(Error::NotGroup(
                "action order does not divide the cyclic factor".into(),
            ));
        }
        let n = normal.n * m;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (x, i) = (a / m, a % m);
                let (y, j) = (b / m, b % m);
                table.push(normal.mul(x, powers[i].apply(y)) * m + (i + j) % m);
            }
        }
        Self::from_flat(n, table)
    }

    // ---- basic queries ------------------------------------------------------

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Map from element order to number of elements of that order.
    pub fn order_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for a in 0..self.n {
            *census.entry(self.element_order(a)).or_insert(0) += 1;
        }
        census
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn is_homomorphism_to(&self, target: &FiniteGroup, images: &[usize]) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| images[self.mul(a, b)] == target.mul(images[a], images[b]))
        })
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut members = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in seed {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members
    }

    /// A generating set chosen greedily: repeatedly add the element of
    /// largest order (smallest label on ties) outside the current subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for a in by_order {
            if span.len() == self.n {
                break;
            }
            if !span.contains(&a) {
                gens.push(a);
                span = self.subgroup_generated(&gens.iter().copied().collect());
            }
        }
        gens
    }

    // ---- structure ----------------------------------------------------------

    pub fn center(&self) -> BTreeSet<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// The derived subgroup `G'`.
    pub fn commutator_subgroup(&self) -> BTreeSet<usize> {
        let commutators: BTreeSet<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.subgroup_generated(&commutators)
    }

    pub fn is_normal(&self, subgroup: &BTreeSet<usize>) -> bool {
        subgroup.iter().all(|&h| {
            (0..self.n).all(|g| subgroup.contains(&self.mul(self.mul(self.inv(g), h), g)))
        })
    }

    /// `G / N`, cosets labelled in increasing order of their minimal
    /// representative.
    pub fn quotient(&self, normal: &BTreeSet<usize>) -> Result<FiniteGroup> {
        if !normal.contains(&self.identity) || !self.is_normal(normal) {
            return Err(Error::NotGroup("quotient by a non-normal subset".into()));
        }
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let label = reps.len();
            reps.push(g);
            for &h in normal {
                coset_of[self.mul(g, h)] = label;
            }
        }
        let k = reps.len();
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| coset_of[self.mul(reps[i], reps[j])])
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(rows)
    }

    pub fn abelianization(&self) -> FiniteGroup {
        self.quotient(&self.commutator_subgroup())
            .expect("the derived subgroup is normal")
    }

    /// `g^2` central for all `g` and `[G, G]` central.
    pub fn central_squares_two_step(&self) -> bool {
        let center = self.center();
        (0..self.n).all(|g| center.contains(&self.mul(g, g)))
            && self.commutator_subgroup().is_subset(&center)
    }

    // ---- morphisms ----------------------------------------------------------

    /// All isomorphisms `self -> other` (up to `limit`), by backtracking
    /// over images of a greedy generating set, restricted to elements of
    /// equal order.
    pub fn isomorphisms(&self, other: &FiniteGroup, limit: usize) -> Vec<Permutation> {
        if self.n != other.n || self.order_census() != other.order_census() {
            return Vec::new();
        }
        let gens = self.generators();
        let orders: Vec<usize> = (0..other.n).map(|x| other.element_order(x)).collect();
        let mut found = Vec::new();
        let mut images = vec![0; gens.len()];
        self.extend_images(other, &gens, &orders, 0, &mut images, &mut found, limit);
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_images(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        orders: &[usize],
        depth: usize,
        images: &mut Vec<usize>,
        found: &mut Vec<Permutation>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        if depth == gens.len() {
            if let Some(map) = self.homomorphism_from_generators(other, gens, images) {
                found.push(map);
            }
            return;
        }
        let want = self.element_order(gens[depth]);
        for y in 0..other.n {
            if orders[y] == want && !images[..depth].contains(&y) {
                images[depth] = y;
                self.extend_images(other, gens, orders, depth + 1, images, found, limit);
            }
        }
    }

    /// Extends generator images multiplicatively; returns the map if it is a
    /// well-defined bijective homomorphism.
    fn homomorphism_from_generators(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Permutation> {
        let mut map = vec![usize::MAX; self.n];
        map[self.identity] = other.identity;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    frontier.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let sigma = Permutation::from_images(map).ok()?;
        self.is_homomorphism_to(other, sigma.images())
            .then_some(sigma)
    }

    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Permutation> {
        self.isomorphisms(other, 1).pop()
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Every automorphism, sorted by image list (identity first).
    pub fn automorphisms(&self) -> Vec<GroupAutomorphism> {
        let mut auts: Vec<GroupAutomorphism> = self
            .isomorphisms(self, usize::MAX)
            .into_iter()
            .map(|images| GroupAutomorphism { images })
            .collect();
        auts.sort();
        auts
    }

    /// `Aut(G)` as a group, together with the automorphism each label
    /// denotes. The product `g h` applies `g` first, then `h`.
    pub fn automorphism_group(&self) -> (FiniteGroup, Vec<GroupAutomorphism>) {
        let auts = self.automorphisms();
        let group = FiniteGroup::from_elements(&auts, |a, b| a.then(b))
            .expect("automorphisms form a group");
        (group, auts)
    }

    /// `x -> k x` on the cyclic group of order `n`, when `k` is a unit.
    pub fn unit_automorphism(n: usize, k: usize) -> Result<GroupAutomorphism> {
        let z = FiniteGroup::cyclic(n);
        let images = Permutation::from_images((0..n).map(|x| (k * x) % n).collect())
            .map_err(|_| Error::NotAutomorphism)?;
        GroupAutomorphism::new(&z, images)
    }

    /// Conjugation `x -> g^-1 x g`.
    pub fn inner_automorphism(&self, g: usize) -> GroupAutomorphism {
        let images = (0..self.n)
            .map(|x| self.mul(self.mul(self.inv(g), x), g))
            .collect();
        GroupAutomorphism {
            images: Permutation::from_images_unchecked(images),
        }
    }

    // ---- identification -----------------------------------------------------

    /// Invariant-factor name of an abelian group, e.g. `Z2xZ2`, `Z6`,
    /// `trivial`.
    pub fn abelian_label(&self) -> Option<String> {
        if !self.is_abelian() {
            return None;
        }
        if self.n == 1 {
            return Some("trivial".into());
        }
        // per prime p: the number of cyclic factors of order >= p^k is
        // log_p |{x : x^(p^k) = e}| - log_p |{x : x^(p^(k-1)) = e}|
        let mut invariant: Vec<usize> = Vec::new();
        for p in prime_factors(self.n) {
            let mut exponents_ge: Vec<usize> = Vec::new();
            let mut prev_log = 0;
            let mut pk = p;
            loop {
                let count = (0..self.n)
                    .filter(|&x| self.pow(x, pk as i64) == self.identity)
                    .count();
                let log = ilog(count, p);
                if log == prev_log {
                    break;
                }
                exponents_ge.push(log - prev_log);
                prev_log = log;
                pk *= p;
            }
            // exponents_ge[k-1] = number of factors with exponent >= k
            let factors = exponents_ge.first().copied().unwrap_or(0);
            let mut p_parts = vec![1usize; factors];
            for &count in &exponents_ge {
                for part in p_parts.iter_mut().take(count) {
                    *part *= p;
                }
            }
            // largest first; combine into invariant factors from the top
            for (i, part) in p_parts.into_iter().enumerate() {
                if invariant.len() <= i {
                    invariant.push(1);
                }
                invariant[i] *= part;
            }
        }
        invariant.sort_unstable();
        Some(
            invariant
                .iter()
                .map(|d| format!("Z{d}"))
                .collect::<Vec<_>>()
                .join("x"),
        )
    }

    /// Name of the group from a table of all groups of order at most 16;
    /// `None` for larger non-abelian groups.
    pub fn small_group_label(&self) -> Option<String> {
        if let Some(label) = self.abelian_label() {
            return Some(label);
        }
        nonabelian_reference_groups()
            .into_iter()
            .filter(|(_, g)| g.order() == self.n)
            .find(|(_, g)| g.is_isomorphic(self))
            .map(|(name, _)| name.to_string())
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut x: usize, p: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// All non-abelian groups of order at most 16.
pub fn nonabelian_reference_groups() -> Vec<(&'static str, FiniteGroup)> {
    let z = FiniteGroup::cyclic;
    let metacyclic = |m: usize, k: usize, n: usize| {
        let phi = FiniteGroup::unit_automorphism(m, k).expect("unit");
        FiniteGroup::semidirect_cyclic(&z(m), n, &phi).expect("valid action")
    };
    let klein = FiniteGroup::direct_product(&z(2), &z(2));
    let swap = GroupAutomorphism::new(
        &klein,
        Permutation::from_images(vec![0, 2, 1, 3]).expect("perm"),
    )
    .expect("coordinate swap");
    // Z4 x Z2 with (a, b) -> (a + 2b, b): the Pauli group as a semidirect product
    let z4z2 = FiniteGroup::direct_product(&z(4), &z(2));
    let pauli_action = GroupAutomorphism::new(
        &z4z2,
        Permutation::from_images(
            (0..8)
                .map(|i| {
                    let (a, b) = (i / 2, i % 2);
                    ((a + 2 * b) % 4) * 2 + b
                })
                .collect(),
        )
        .expect("perm"),
    )
    .expect("automorphism");
    vec![
        ("S3", FiniteGroup::dihedral(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion8()),
        ("D5", FiniteGroup::dihedral(5)),
        ("D6", FiniteGroup::dihedral(6)),
        ("A4", FiniteGroup::alternating4()),
        ("Dic3", FiniteGroup::dicyclic(3)),
        ("D7", FiniteGroup::dihedral(7)),
        ("D8", FiniteGroup::dihedral(8)),
        ("SD16", metacyclic(8, 3, 2)),
        ("Q16", FiniteGroup::dicyclic(4)),
        ("M16", metacyclic(8, 5, 2)),
        ("Z4:Z4", metacyclic(4, 3, 4)),
        (
            "Z2xD4",
            FiniteGroup::direct_product(&z(2), &FiniteGroup::dihedral(4)),
        ),
        (
            "Z2xQ8",
            FiniteGroup::direct_product(&z(2), &FiniteGroup::quaternion8()),
        ),
        (
            "Pauli",
            FiniteGroup::semidirect_cyclic(&z4z2, 2, &pauli_action).expect("valid"),
        ),
        (
            "Z2^2:Z4",
            FiniteGroup::semidirect_cyclic(&klein, 4, &swap).expect("valid"),
        ),
    ]
}
