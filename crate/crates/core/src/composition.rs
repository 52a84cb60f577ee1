//! Composition of operations on a common carrier, integer powers, and the
//! group of operations generated under composition.
//!
//! The composition of `o` and `*` is `a (o*) b = (a o b) * b`. Column by
//! column this is composition of the inner maps, so on right quasigroups it
//! is associative, the trivial operation is the unit and the right inverse
//! operation is the inverse.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::iso::is_isomorphic;
use crate::table::OpTable;

/// Default ceiling on the number of distinct tables an exploratory closure
/// may materialise.
pub const EXPLORE_LIMIT: usize = 100_000;

/// `a (t1 t2) b = t2(t1(a, b), b)`. The result is not classified.
pub fn compose(t1: &OpTable, t2: &OpTable) -> Result<OpTable> {
    t1.check_same_size(t2)?;
    OpTable::from_fn(t1.n(), |a, b| t2.get(t1.get(a, b), b))
}

/// `k`-fold composition; `k = 0` is trivial and negative powers use the
/// right inverse.
pub fn power(t: &OpTable, k: i64) -> Result<OpTable> {
    let base = if k < 0 { t.right_inverse()? } else { t.clone() };
    let mut acc = OpTable::trivial(t.n())?;
    for _ in 0..k.unsigned_abs() {
        acc = compose(&acc, &base)?;
    }
    Ok(acc)
}

/// First `(a, b, c)` with `(a o b) * c != (a * c) o (b * c)`, where
/// `star` is `*` and `circ` is `o`.
pub fn distributivity_witness(
    star: &OpTable,
    circ: &OpTable,
) -> Result<Option<(usize, usize, usize)>> {
    star.check_same_size(circ)?;
    Ok(crate::table::first_violation(star.n(), |a, b, c| {
        star.get(circ.get(a, b), c) != circ.get(star.get(a, c), star.get(b, c))
    }))
}

/// Whether `star` distributes over `circ`:
/// `(a o b) * c = (a * c) o (b * c)` for all `a, b, c`.
pub fn distributes_over(star: &OpTable, circ: &OpTable) -> Result<bool> {
    Ok(distributivity_witness(star, circ)?.is_none())
}

pub fn mutually_distributive(t1: &OpTable, t2: &OpTable) -> Result<bool> {
    Ok(distributes_over(t1, t2)? && distributes_over(t2, t1)?)
}

/// A freely reduced word over generator ids with non-zero integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpWord {
    syllables: Vec<(usize, i64)>,
}

impl OpWord {
    pub fn empty() -> Self {
        OpWord::default()
    }

    pub fn generator(id: usize) -> Self {
        OpWord {
            syllables: vec![(id, 1)],
        }
    }

    /// Merges adjacent syllables on the same generator and drops zero
    /// exponents.
    pub fn new(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, exp)) if *last == g => {
                    *exp += e;
                    if *exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        OpWord { syllables: out }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn concat(&self, other: &OpWord) -> OpWord {
        OpWord::new(self.syllables.iter().chain(&other.syllables).copied())
    }

    pub fn inverse(&self) -> OpWord {
        OpWord::new(self.syllables.iter().rev().map(|&(g, e)| (g, -e)))
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Parses whitespace-separated syllables such as `a^2 b^-1 a`, naming
    /// generator `i` by `names[i]`. `1` or an empty string is the empty
    /// word.
    pub fn parse(text: &str, names: &[&str]) -> Result<OpWord> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(OpWord::empty());
        }
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exp: i64 = exp
                        .parse()
                        .map_err(|_| Error::WordSyntax(format!("bad exponent in `{token}`")))?;
                    (name, exp)
                }
                None => (token, 1),
            };
            let id = names
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| Error::WordSyntax(format!("unknown generator `{name}`")))?;
            syllables.push((id, exp));
        }
        Ok(OpWord::new(syllables))
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|&(g, e)| {
                let name = names
                    .get(g)
                    .map_or_else(|| format!("g{g}"), |s| s.to_string());
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Generator names `a`, `b`, .. used when none are supplied.
pub fn default_generator_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_generator_names(
            self.syllables
                .iter()
                .map(|&(g, _)| g + 1)
                .max()
                .unwrap_or(0),
        );
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Composes the powers named by `word` left to right, starting from the
/// trivial operation.
pub fn word_operation(generators: &[OpTable], word: &OpWord) -> Result<OpTable> {
    let n = common_size(generators)?;
    let mut acc = OpTable::trivial(n)?;
    for &(g, e) in word.syllables() {
        let table = generators.get(g).ok_or(Error::UnknownGenerator(g))?;
        acc = compose(&acc, &power(table, e)?)?;
    }
    Ok(acc)
}

fn common_size(tables: &[OpTable]) -> Result<usize> {
    let first = tables
        .first()
        .ok_or_else(|| Error::MalformedFamily("no generators given".into()))?;
    for t in tables {
        first.check_same_size(t)?;
    }
    Ok(first.n())
}

/// The group of operations generated by some tables under composition.
///
/// Elements are distinct tables (table equality, not isomorphism), sorted;
/// the trivial table is always element 0.
#[derive(Clone, Debug)]
pub struct QuandleGroup {
    generators: Vec<OpTable>,
    elements: Vec<OpTable>,
    words: Vec<OpWord>,
    index: HashMap<Vec<u8>, usize>,
}

/// Closure of mutually distributive quandle operations.
///
/// Every ordered pair of generators, including each generator with itself,
/// is checked for distributivity first.
pub fn closure_group(generators: &[OpTable]) -> Result<QuandleGroup> {
    common_size(generators)?;
    for (i, t) in generators.iter().enumerate() {
        t.require_quandle()?;
        for (j, u) in generators.iter().enumerate() {
            if let Some(witness) = distributivity_witness(t, u)? {
                return Err(Error::NotMutuallyDistributive {
                    left: i,
                    right: j,
                    witness,
                });
            }
        }
    }
    closure_bounded(generators, EXPLORE_LIMIT)
}

/// Closure without the distributivity hypothesis; generators only need to
/// be right quasigroups. Elements need not be quandles.
pub fn closure_explore(generators: &[OpTable], limit: usize) -> Result<QuandleGroup> {
    common_size(generators)?;
    for t in generators {
        t.require_right_quasigroup()?;
    }
    closure_bounded(generators, limit)
}

fn closure_bounded(generators: &[OpTable], limit: usize) -> Result<QuandleGroup> {
    let n = common_size(generators)?;
    let mut steps: Vec<(OpTable, OpWord)> = Vec::new();
    for (g, t) in generators.iter().enumerate() {
        steps.push((t.clone(), OpWord::generator(g)));
        steps.push((t.right_inverse()?, OpWord::new([(g, -1)])));
    }
    let trivial = OpTable::trivial(n)?;
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut elements = vec![trivial.clone()];
    let mut words = vec![OpWord::empty()];
    index.insert(trivial.encode(), 0);
    let mut next = 0;
    while next < elements.len() {
        for (step, step_word) in &steps {
            let candidate = compose(&elements[next], step)?;
            let key = candidate.encode();
            if index.contains_key(&key) {
                continue;
            }
            if elements.len() >= limit {
                return Err(Error::ClosureTooLarge(limit));
            }
            index.insert(key, elements.len());
            words.push(words[next].concat(step_word));
            elements.push(candidate);
        }
        next += 1;
    }
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
    let elements: Vec<OpTable> = order.iter().map(|&i| elements[i].clone()).collect();
    let words: Vec<OpWord> = order.iter().map(|&i| words[i].clone()).collect();
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, t)| (t.encode(), i))
        .collect();
    debug_assert!(elements[0].is_trivial());
    Ok(QuandleGroup {
        generators: generators.to_vec(),
        elements,
        words,
        index,
    })
}

impl QuandleGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[OpTable] {
        &self.generators
    }

    pub fn elements(&self) -> &[OpTable] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &OpTable {
        &self.elements[i]
    }

    /// A shortest word (in breadth-first order) producing element `i`.
    pub fn word(&self, i: usize) -> &OpWord {
        &self.words[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, t: &OpTable) -> Option<usize> {
        self.index.get(&t.encode()).copied()
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        let p = compose(&self.elements[i], &self.elements[j]).expect("same carrier");
        self.index_of(&p)
            .expect("closure is closed under composition")
    }

    pub fn inverse(&self, i: usize) -> usize {
        let inv = self.elements[i]
            .right_inverse()
            .expect("elements are right quasigroups");
        self.index_of(&inv)
            .expect("closure is closed under inverses")
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.order();
        (0..k).all(|i| (i + 1..k).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// The abstract group, element `i` labelled `i`.
    pub fn to_finite_group(&self) -> Result<FiniteGroup> {
        let k = self.order();
        let rows = (0..k)
            .map(|i| (0..k).map(|j| self.product(i, j)).collect())
            .collect();
        FiniteGroup::from_table(rows)
    }

    /// Small-group name such as `Z2xZ2`; abelian groups of any order and
    /// every group of order at most 16 are resolved.
    pub fn iso_type(&self) -> Result<String> {
        let group = self.to_finite_group()?;
        group.small_group_label().ok_or(Error::UnresolvedIsoType {
            order: self.order(),
            abelian: group.is_abelian(),
        })
    }

    /// Elements grouped by isomorphism class of their tables; a reporting
    /// view only, group identity stays table equality.
    pub fn isomorphism_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.order() {
            match classes
                .iter_mut()
                .find(|c| is_isomorphic(&self.elements[c[0]], &self.elements[i]).is_some())
            {
                Some(class) => class.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }
}

/// Least `k >= 1` with `power(t, k)` trivial, searched up to the lcm of the
/// inner-map orders.
pub fn n_quandle_order(t: &OpTable) -> Result<Option<usize>> {
    t.require_quandle()?;
    let bound = t.inner_exponent()?;
    let mut acc = t.clone();
    for k in 1..=bound {
        if acc.is_trivial() {
            return Ok(Some(k));
        }
        acc = compose(&acc, t)?;
    }
    Ok(None)
}
