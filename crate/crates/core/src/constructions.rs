//! Quandles built from groups, and the catalogue of small printed tables.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAutomorphism};
use crate::table::OpTable;

pub fn trivial_quandle(n: usize) -> Result<OpTable> {
    OpTable::trivial(n)
}

/// `a * b = 2b - a (mod n)`.
pub fn dihedral_quandle(n: usize) -> Result<OpTable> {
    OpTable::from_fn(n, |a, b| (2 * b + n - a) % n)
}

/// `a * b = b^-k a b^k`.
pub fn conj_quandle(group: &FiniteGroup, k: i64) -> OpTable {
    let n = group.order();
    let powers: Vec<usize> = (0..n).map(|b| group.pow(b, k)).collect();
    OpTable::from_fn(n, |a, b| {
        group.mul(group.mul(group.inv(powers[b]), a), powers[b])
    })
    .expect("group carrier is non-empty")
}

/// `a * b = b a^-1 b`.
pub fn core_quandle(group: &FiniteGroup) -> OpTable {
    OpTable::from_fn(group.order(), |a, b| {
        group.mul(group.mul(b, group.inv(a)), b)
    })
    .expect("group carrier is non-empty")
}

/// `a * b = phi(a b^-1) b`.
pub fn alexander_quandle(group: &FiniteGroup, phi: &GroupAutomorphism) -> Result<OpTable> {
    // the automorphism may have been built for a different group
    GroupAutomorphism::new(group, phi.permutation().clone())?;
    Ok(OpTable::from_fn(group.order(), |a, b| {
        group.mul(phi.apply(group.mul(a, group.inv(b))), b)
    })
    .expect("group carrier is non-empty"))
}

/// Carrier `H x Aut(H)`, pair `(x, phi)` flattened as `x * |Aut H| + phi`
/// with automorphisms labelled as in [`FiniteGroup::automorphism_group`].
///
/// The operation is `(x, phi) . (y, psi) = (x *_psi y, psi^-1 phi psi)`,
/// i.e. the Alexander operations `x *_psi y = psi(x y^-1) y` on the first
/// coordinate and conjugation in `Aut(H)` on the second. See
/// [`holomorph_product_table`] for the variant whose second coordinate is
/// the plain product `phi psi`.
pub fn holomorph_quandle(h: &FiniteGroup) -> OpTable {
    holomorph_table(h, |aut, phi, psi| aut.mul(aut.mul(aut.inv(psi), phi), psi))
}

/// `(x, phi) . (y, psi) = (x *_psi y, phi psi)` on `H x Aut(H)`.
///
/// Not idempotent as soon as `Aut(H)` is non-trivial, since
/// `(x, phi) . (x, phi) = (x, phi^2)`.
pub fn holomorph_product_table(h: &FiniteGroup) -> OpTable {
    holomorph_table(h, |aut, phi, psi| aut.mul(phi, psi))
}

fn holomorph_table(
    h: &FiniteGroup,
    second: impl Fn(&FiniteGroup, usize, usize) -> usize,
) -> OpTable {
    let (aut, labels) = h.automorphism_group();
    let k = aut.order();
    let alexander: Vec<OpTable> = labels
        .iter()
        .map(|psi| alexander_quandle(h, psi).expect("automorphism of h"))
        .collect();
    OpTable::from_fn(h.order() * k, |a, b| {
        let (x, phi) = (a / k, a % k);
        let (y, psi) = (b / k, b % k);
        alexander[psi].get(x, y) * k + second(&aut, phi, psi)
    })
    .expect("non-empty carrier")
}

/// A named table from the built-in catalogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub table: OpTable,
}

pub const CATALOG_NAMES: [&str; 11] = [
    "T3", "R3", "J3", "Q0", "Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Z5-Alex2",
];

/// The order-3 tables are stored shifted to 0-indexing; the order-4 tables
/// and the Alexander table on `Z5` are already 0-indexed.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let rows: Vec<Vec<usize>> = match name {
        "T3" => vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]],
        "R3" => vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]],
        "J3" => vec![vec![0, 0, 0], vec![2, 1, 1], vec![1, 2, 2]],
        "Q0" => vec![
            vec![0, 0, 0, 0],
            vec![1, 1, 1, 1],
            vec![2, 2, 2, 2],
            vec![3, 3, 3, 3],
        ],
        "Q1" => vec![
            vec![0, 0, 0, 0],
            vec![1, 1, 1, 2],
            vec![2, 2, 2, 1],
            vec![3, 3, 3, 3],
        ],
        "Q2" => vec![
            vec![0, 0, 0, 1],
            vec![1, 1, 1, 2],
            vec![2, 2, 2, 0],
            vec![3, 3, 3, 3],
        ],
        "Q3" => vec![
            vec![0, 0, 1, 1],
            vec![1, 1, 0, 0],
            vec![2, 2, 2, 2],
            vec![3, 3, 3, 3],
        ],
        "Q4" => vec![
            vec![0, 0, 0, 0],
            vec![1, 1, 3, 2],
            vec![2, 3, 2, 1],
            vec![3, 2, 1, 3],
        ],
        "Q5" => vec![
            vec![0, 0, 1, 1],
            vec![1, 1, 0, 0],
            vec![3, 3, 2, 2],
            vec![2, 2, 3, 3],
        ],
        "Q6" => vec![
            vec![0, 3, 1, 2],
            vec![2, 1, 3, 0],
            vec![3, 0, 2, 1],
            vec![1, 2, 0, 3],
        ],
        "Z5-Alex2" => vec![
            vec![0, 4, 3, 2, 1],
            vec![2, 1, 0, 4, 3],
            vec![4, 3, 2, 1, 0],
            vec![1, 0, 4, 3, 2],
            vec![3, 2, 1, 0, 4],
        ],
        _ => return Err(Error::UnknownCatalogName(name.to_string())),
    };
    let name = CATALOG_NAMES
        .iter()
        .copied()
        .find(|&n| n == name)
        .expect("matched above");
    Ok(CatalogEntry {
        name,
        table: OpTable::from_rows(rows)?,
    })
}

pub fn catalog_table(name: &str) -> Result<OpTable> {
    catalog(name).map(|entry| entry.table)
}

/// The catalogued quandles of order 4, `Q0` to `Q6`.
pub fn order_four_catalog() -> Vec<OpTable> {
    (0..7)
        .map(|i| catalog_table(&format!("Q{i}")).expect("catalogued"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::table::Classification;

    #[test]
    fn catalog_entries_are_quandles() {
        for name in CATALOG_NAMES {
            let entry = catalog(name).unwrap();
            assert_eq!(entry.name, name);
            assert_eq!(
                entry.table.classification(),
                Classification::Quandle,
                "{name}"
            );
        }
        assert!(matches!(catalog("Q7"), Err(Error::UnknownCatalogName(_))));
        assert_eq!(catalog_table("Q0").unwrap(), trivial_quandle(4).unwrap());
        assert_eq!(
            catalog_table("J3").unwrap().rows(),
            vec![vec![0, 0, 0], vec![2, 1, 1], vec![1, 2, 2]]
        );
    }

    #[test]
    fn named_constructions() {
        assert_eq!(trivial_quandle(3).unwrap(), catalog_table("T3").unwrap());
        assert_eq!(trivial_quandle(1).unwrap().rows(), vec![vec![0]]);
        assert!(trivial_quandle(0).is_err());
        assert!(dihedral_quandle(0).is_err());
        assert_eq!(dihedral_quandle(3).unwrap(), catalog_table("R3").unwrap());
        assert!(
            is_isomorphic(&dihedral_quandle(4).unwrap(), &catalog_table("Q5").unwrap()).is_some()
        );
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(core_quandle(&z3), dihedral_quandle(3).unwrap());
        assert_eq!(
            core_quandle(&FiniteGroup::cyclic(2)),
            trivial_quandle(2).unwrap()
        );
    }

    #[test]
    fn conjugation_quandles() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(
            conj_quandle(&FiniteGroup::cyclic(5), 1),
            trivial_quandle(5).unwrap()
        );
        assert_eq!(conj_quandle(&s3, 0), trivial_quandle(6).unwrap());
        assert!(conj_quandle(&s3, 1).is_quandle());
        assert!(conj_quandle(&s3, -2).is_quandle());
    }

    #[test]
    fn alexander_quandles() {
        let z5 = FiniteGroup::cyclic(5);
        let times2 = FiniteGroup::unit_automorphism(5, 2).unwrap();
        assert_eq!(
            alexander_quandle(&z5, &times2).unwrap(),
            catalog_table("Z5-Alex2").unwrap()
        );
        let id = GroupAutomorphism::identity(&z5);
        assert_eq!(
            alexander_quandle(&z5, &id).unwrap(),
            trivial_quandle(5).unwrap()
        );
        for n in 1..8 {
            let inversion = FiniteGroup::unit_automorphism(n, n - 1)
                .unwrap_or_else(|_| GroupAutomorphism::identity(&FiniteGroup::cyclic(n)));
            let zn = FiniteGroup::cyclic(n);
            assert_eq!(
                alexander_quandle(&zn, &inversion).unwrap(),
                dihedral_quandle(n).unwrap()
            );
        }
        // an automorphism of Z5 is not one of Z4
        assert_eq!(
            alexander_quandle(&FiniteGroup::cyclic(4), &times2),
            Err(Error::NotAutomorphism)
        );
    }

    #[test]
    fn holomorph_tables() {
        let z2 = holomorph_quandle(&FiniteGroup::cyclic(2));
        assert_eq!(z2, trivial_quandle(2).unwrap());
        for n in [3, 5] {
            let t = holomorph_quandle(&FiniteGroup::cyclic(n));
            assert_eq!(t.n(), n * (n - 1));
            assert!(t.is_quandle());
            assert!(!holomorph_product_table(&FiniteGroup::cyclic(n)).is_idempotent());
        }
        let s3 = holomorph_quandle(&FiniteGroup::symmetric(3).unwrap());
        assert_eq!(s3.n(), 36);
        assert!(s3.is_quandle());
    }
}
