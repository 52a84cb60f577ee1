//! Named worked examples for `qf reproduce <id>`.
//!
//! Each example prints its tables and facts, and exits 1 if an expected
//! fact fails to hold.

use quandle_core::composition::{
    closure_group, compose, distributivity_witness, power, word_operation, OpWord,
};
use quandle_core::constructions::{
    alexander_quandle, catalog_table, conj_quandle, core_quandle, holomorph_product_table,
    holomorph_quandle, trivial_quandle,
};
use quandle_core::enumerate::enumerate_quandles_capped;
use quandle_core::iso::is_isomorphic;
use quandle_core::{n_quandle_order, Classification, FiniteGroup, OpTable};

use crate::report::Report;
use crate::{classified, closure_report, CliError, Outcome};

pub const EXAMPLES: &[(&str, &str)] = &[
    ("r3j3", "the composition R3 J3 of two order-3 quandles"),
    ("j3r3", "the composition J3 R3"),
    ("order3", "composition relations among T3, R3 and J3"),
    (
        "alexander-z5",
        "Alexander(Z5, x2) with its second and third powers",
    ),
    ("order4", "the order-4 quandles Q0..Q6 and their powers"),
    (
        "conj-core",
        "distributivity between Conj(G) and Core(G) for S3, D4, Q8",
    ),
    (
        "abelianization",
        "the group generated by Conj(G) and Core(G) for Q8 and D4",
    ),
    (
        "alexander-z7",
        "words in the commuting Alexander operations x2, x3 on Z7",
    ),
    (
        "counts",
        "numbers of quandles of order 1 to 6 up to isomorphism",
    ),
    ("holomorph", "the quandle on the holomorph of Z5"),
    (
        "n-quandles",
        "n-quandle orders of trivial, Core(S3) and Alexander(Z5, x2)",
    ),
];

fn cat(name: &str) -> OpTable {
    catalog_table(name).expect("catalogue entry")
}

fn check(report: &mut Report, all: &mut bool, key: &str, holds: bool) {
    *all &= holds;
    report.push_field(key, holds);
}

pub fn run(id: &str, cap: usize) -> Result<Outcome, CliError> {
    let mut report = Report::new().field("example", id);
    let mut all = true;
    match id {
        "list" => {
            let mut report = Report::new();
            for (id, about) in EXAMPLES {
                report.push_field(id, *about);
            }
            return Ok(Outcome::ok(report));
        }
        "r3j3" | "j3r3" => {
            let (first, second) = if id == "r3j3" {
                ("R3", "J3")
            } else {
                ("J3", "R3")
            };
            let product = compose(&cat(first), &cat(second))?;
            let class = product.classification();
            report.push_field("classification", class.to_string());
            check(
                &mut report,
                &mut all,
                "idempotent_right_quasigroup",
                class == Classification::IdempotentRightQuasigroup,
            );
            report.push_table(classified(&product, Some(&format!("{first}{second}"))));
        }
        "order3" => {
            let (t, r, j) = (cat("T3"), cat("R3"), cat("J3"));
            check(
                &mut report,
                &mut all,
                "T3R3 = R3T3 = R3",
                compose(&t, &r)? == r && compose(&r, &t)? == r,
            );
            check(
                &mut report,
                &mut all,
                "T3J3 = J3T3 = J3",
                compose(&t, &j)? == j && compose(&j, &t)? == j,
            );
            check(
                &mut report,
                &mut all,
                "R3^2 = J3^2 = T3^2 = T3",
                power(&r, 2)? == t && power(&j, 2)? == t && power(&t, 2)? == t,
            );
            for name in ["T3", "R3", "J3"] {
                report.push_table(classified(&cat(name), Some(name)));
            }
        }
        "alexander-z5" => {
            let alex = cat("Z5-Alex2");
            for k in 1..=3 {
                let t = power(&alex, k)?;
                report.push_table(classified(&t, Some(&format!("Z5-Alex2^{k}"))));
            }
            check(
                &mut report,
                &mut all,
                "fourth power is trivial",
                power(&alex, 4)?.is_trivial(),
            );
        }
        "order4" => {
            let q: Vec<OpTable> = (0..7).map(|i| cat(&format!("Q{i}"))).collect();
            check(
                &mut report,
                &mut all,
                "Q1^2 = Q3^2 = Q4^2 = Q5^2 = Q0",
                [1, 3, 4, 5]
                    .iter()
                    .all(|&i| power(&q[i], 2).map(|p| p == q[0]).unwrap_or(false)),
            );
            check(
                &mut report,
                &mut all,
                "Q2^3 = Q6^3 = Q0",
                power(&q[2], 3)? == q[0] && power(&q[6], 3)? == q[0],
            );
            check(
                &mut report,
                &mut all,
                "Q2^2 ~ Q2 and Q6^2 ~ Q6",
                is_isomorphic(&power(&q[2], 2)?, &q[2]).is_some()
                    && is_isomorphic(&power(&q[6], 2)?, &q[6]).is_some(),
            );
            for (i, t) in q.iter().enumerate() {
                report.push_table(classified(t, Some(&format!("Q{i}"))));
            }
        }
        "conj-core" => {
            for (name, g) in [
                ("S3", FiniteGroup::symmetric(3)?),
                ("D4", FiniteGroup::dihedral(4)),
                ("Q8", FiniteGroup::quaternion8()),
            ] {
                let (conj, core) = (conj_quandle(&g, 1), core_quandle(&g));
                let first = distributivity_witness(&conj, &core)?;
                let second = distributivity_witness(&core, &conj)?;
                all &= first.is_none() && second.is_none() == g.central_squares_two_step();
                report.push_section(
                    name,
                    Report::new()
                        .field("conj_over_core", first.is_none())
                        .field("core_over_conj", second.is_none())
                        .field("counterexample", crate::triple(second))
                        .field("squares_central", g.central_squares_two_step()),
                );
            }
        }
        "abelianization" => {
            for (name, g) in [
                ("Q8", FiniteGroup::quaternion8()),
                ("D4", FiniteGroup::dihedral(4)),
            ] {
                let group = closure_group(&[conj_quandle(&g, 1), core_quandle(&g)])?;
                let matches = group.to_finite_group()?.is_isomorphic(&g.abelianization());
                all &= group.order() == 4 && group.is_abelian() && matches;
                report.push_section(
                    name,
                    closure_report(&group, 2).field("isomorphic_to_abelianization", matches),
                );
            }
        }
        "alexander-z7" => {
            let z7 = FiniteGroup::cyclic(7);
            let gens = [
                alexander_quandle(&z7, &FiniteGroup::unit_automorphism(7, 2)?)?,
                alexander_quandle(&z7, &FiniteGroup::unit_automorphism(7, 3)?)?,
            ];
            for k in -2..=2 {
                for l in -2..=2 {
                    let word = OpWord::new([(0, k), (1, l)]);
                    let class = word_operation(&gens, &word)?.classification();
                    all &= class == Classification::Quandle;
                    report.push_field(&format!("a^{k} b^{l}"), class.to_string());
                }
            }
        }
        "counts" => {
            let expected = [1, 1, 3, 7, 22, 73];
            for (i, &want) in expected.iter().enumerate().take(cap.min(expected.len())) {
                let n = i + 1;
                let got = enumerate_quandles_capped(n, true, cap)?.len();
                all &= got == want;
                report.push_field(&format!("order {n}"), got);
            }
        }
        "holomorph" => {
            let z5 = FiniteGroup::cyclic(5);
            let t = holomorph_quandle(&z5);
            let literal = holomorph_product_table(&z5);
            report.push_field("conjugation_classification", t.classification().to_string());
            report.push_field(
                "literal_product_classification",
                literal.classification().to_string(),
            );
            all &= t.is_quandle();
            report.push_table(classified(&t, Some("holomorph Z5")));
        }
        "n-quandles" => {
            let cases = [
                ("trivial:3", trivial_quandle(3)?, 1),
                ("core:S3", core_quandle(&FiniteGroup::symmetric(3)?), 2),
                ("Z5-Alex2", cat("Z5-Alex2"), 4),
            ];
            for (name, t, want) in cases {
                let got = n_quandle_order(&t)?;
                all &= got == Some(want);
                report.push_field(name, got);
            }
        }
        other => {
            let known: Vec<&str> = EXAMPLES.iter().map(|(id, _)| *id).collect();
            return Err(CliError::Usage(format!(
                "unknown example `{other}`; known: {}",
                known.join(", ")
            )));
        }
    }
    report.push_field("holds", all);
    Ok(Outcome::verdict(report, all))
}
