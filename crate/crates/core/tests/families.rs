use quandle_core::composition::{closure_group, power};
use quandle_core::constructions::{alexander_quandle, catalog_table, conj_quandle, core_quandle};
use quandle_core::families::{
    associated_quandle, cocycle_check, cocycle_witness, general_product_check, validate_gf_family,
    validate_q_family, validate_qf_family, FamilySpec, FamilyViolation, IndexStructure,
    ProductViolation,
};
use quandle_core::group::FiniteGroup;
use quandle_core::iso::is_isomorphic;
use quandle_core::table::OpTable;

fn projection(m: usize) -> Vec<usize> {
    (0..m).flat_map(|_| 0..m).collect()
}

fn alexander_family(h: &FiniteGroup) -> (FiniteGroup, Vec<OpTable>) {
    let (aut, labels) = h.automorphism_group();
    let ops = labels
        .iter()
        .map(|phi| alexander_quandle(h, phi).unwrap())
        .collect();
    (aut, ops)
}

#[test]
fn single_index_families() {
    for name in ["R3", "J3", "Q4"] {
        let t = catalog_table(name).unwrap();
        let spec = FamilySpec::new(
            t.n(),
            IndexStructure::Quandle(OpTable::trivial(1).unwrap()),
            vec![t.clone()],
            Some(vec![0]),
        )
        .unwrap();
        assert_eq!(validate_qf_family(&spec).unwrap(), None);
        let assoc = associated_quandle(&spec).unwrap();
        assert!(is_isomorphic(&assoc, &t).is_some());
    }
    // a one-point index accepts exactly the quandles
    let rack = OpTable::from_rows(vec![vec![1, 1], vec![0, 0]]).unwrap();
    let spec = FamilySpec::new(
        2,
        IndexStructure::Quandle(OpTable::trivial(1).unwrap()),
        vec![rack],
        Some(vec![0]),
    )
    .unwrap();
    assert_eq!(
        validate_qf_family(&spec).unwrap(),
        Some(FamilyViolation::NotIdempotent { x: 0, index: 0 })
    );
}

#[test]
fn non_bijective_operation_is_rejected() {
    let bad = OpTable::from_rows(vec![vec![0, 0, 0], vec![0, 1, 1], vec![2, 2, 2]]).unwrap();
    let spec = FamilySpec::new(
        3,
        IndexStructure::Quandle(OpTable::trivial(2).unwrap()),
        vec![OpTable::trivial(3).unwrap(), bad],
        Some(projection(2)),
    )
    .unwrap();
    let violation = validate_qf_family(&spec).unwrap().unwrap();
    assert_eq!(violation, FamilyViolation::NotBijective { x: 0, index: 1 });
    assert_eq!(violation.axiom(), 2);
}

#[test]
fn all_trivial_family() {
    let spec = FamilySpec::new(
        3,
        IndexStructure::Quandle(OpTable::trivial(2).unwrap()),
        vec![OpTable::trivial(3).unwrap(); 2],
        None,
    )
    .unwrap();
    assert_eq!(validate_q_family(&spec).unwrap(), None);
    assert_eq!(
        associated_quandle(&spec).unwrap(),
        OpTable::trivial(6).unwrap()
    );
}

#[test]
fn trivial_index_quandle_needs_commuting_operations() {
    let abelian = FiniteGroup::cyclic(4);
    let alex = catalog_table("Z5-Alex2").unwrap();
    let ops: Vec<OpTable> = (0..4).map(|k| power(&alex, k).unwrap()).collect();
    let spec = FamilySpec::new(
        5,
        IndexStructure::Group {
            group: abelian,
            quandle: Some(OpTable::trivial(4).unwrap()),
        },
        ops,
        Some(projection(4)),
    )
    .unwrap();
    assert_eq!(validate_gf_family(&spec).unwrap(), None);
    assert!(cocycle_check(&spec).unwrap());

    // Aut(S3) is non-abelian, so with trivial Q_G the identity *_{hq} = *_{qh} fails
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let (aut, ops) = alexander_family(&s3);
    let m = aut.order();
    let spec = FamilySpec::new(
        6,
        IndexStructure::Group {
            group: aut.clone(),
            quandle: Some(OpTable::trivial(m).unwrap()),
        },
        ops.clone(),
        Some(projection(m)),
    )
    .unwrap();
    assert!(!cocycle_check(&spec).unwrap());
    assert!(cocycle_witness(&spec).unwrap().is_some());
    assert!(validate_gf_family(&spec).unwrap().is_some());

    // with Q_G = Conj(G) the same operations form a valid family
    let spec = FamilySpec::new(
        6,
        IndexStructure::Group {
            quandle: Some(conj_quandle(&aut, 1)),
            group: aut,
        },
        ops,
        Some(projection(m)),
    )
    .unwrap();
    assert_eq!(validate_gf_family(&spec).unwrap(), None);
    assert!(cocycle_check(&spec).unwrap());
    assert_eq!(associated_quandle(&spec).unwrap().n(), 36);
}

#[test]
fn group_of_operations_as_family() {
    let d4 = FiniteGroup::dihedral(4);
    let group = closure_group(&[conj_quandle(&d4, 1), core_quandle(&d4)]).unwrap();
    let spec = group.as_family().unwrap();
    assert_eq!(validate_gf_family(&spec).unwrap(), None);
    let assoc = associated_quandle(&spec).unwrap();
    assert_eq!(assoc.n(), 8 * 4);
    assert!(assoc.is_quandle());
}

#[test]
fn product_from_family_and_index_quandle() {
    let r3 = catalog_table("R3").unwrap();
    // f_{s,t} = R3, g constant R3
    let report = general_product_check(3, 3, &vec![r3.clone(); 9], &vec![r3.clone(); 9]).unwrap();
    assert!(report.conditions_hold && report.table.is_quandle());

    // f_{s,t} = R3^t is a Q-family over the trivial quandle, g constant T3
    let f: Vec<OpTable> = (0..9)
        .map(|st| power(&r3, (st % 3) as i64).unwrap())
        .collect();
    let g = vec![OpTable::trivial(3).unwrap(); 9];
    let report = general_product_check(3, 3, &f, &g).unwrap();
    assert!(report.conditions_hold);
    assert!(report.table.is_quandle());

    // break idempotency of f_{0,0} at x = 1
    let mut f = f;
    f[0] = OpTable::from_rows(vec![vec![0, 0, 0], vec![2, 2, 2], vec![1, 1, 1]]).unwrap();
    let report = general_product_check(3, 3, &f, &g).unwrap();
    assert!(!report.conditions_hold);
    assert!(!report.table.is_quandle());
    assert_eq!(
        report.violation,
        Some(ProductViolation::NotIdempotent { x: 1, s: 0 })
    );
    assert_eq!(report.table.first_non_idempotent(), Some(3));
}
