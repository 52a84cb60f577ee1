//! Names accepted by `build` and wherever a table argument is expected.
//!
//! Groups: `Z<n>`, `S<n>` (n <= 4), `D<m>` (dihedral of order 2m), `Q8`,
//! `Dic<m>`, `A4`, and direct products such as `Z2xZ2`.
//!
//! Operations: catalogue names (`T3`, `R3`, `J3`, `Q0`..`Q6`, `Z5-Alex2`),
//! `trivial:<n>`, `dihedral:<n>`, `conj:<G>[:<k>]`, `core:<G>`,
//! `alexander:<n>:<k>` (multiplication by `k` on `Z<n>`),
//! `holomorph:<G>`, and `group:<G>` for the group table itself.

use quandle_core::constructions::{
    alexander_quandle, catalog_table, conj_quandle, core_quandle, dihedral_quandle,
    holomorph_quandle, trivial_quandle,
};
use quandle_core::FiniteGroup;

use crate::document::TableDocument;
use crate::CliError;

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("`{text}` is not a valid {what}")))
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup, CliError> {
    let factors: Vec<&str> = spec.split('x').collect();
    if factors.len() > 1 {
        let mut group = parse_group(factors[0])?;
        for f in &factors[1..] {
            group = FiniteGroup::direct_product(&group, &parse_group(f)?);
        }
        return Ok(group);
    }
    let unknown = || CliError::Usage(format!("unknown group `{spec}`"));
    let group = match spec {
        "Q8" => FiniteGroup::quaternion8(),
        "A4" => FiniteGroup::alternating4(),
        "1" | "trivial" => FiniteGroup::trivial(),
        _ => {
            if let Some(m) = spec.strip_prefix("Dic") {
                FiniteGroup::dicyclic(positive(number(m, "order")?)?)
            } else if let Some(n) = spec.strip_prefix('Z') {
                FiniteGroup::cyclic(positive(number(n, "order")?)?)
            } else if let Some(n) = spec.strip_prefix('S') {
                FiniteGroup::symmetric(number(n, "degree")?).map_err(|_| {
                    CliError::Usage(format!("symmetric groups are built up to S4, not `{spec}`"))
                })?
            } else if let Some(m) = spec.strip_prefix('D') {
                FiniteGroup::dihedral(positive(number(m, "order")?)?)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(group)
}

fn positive(n: usize) -> Result<usize, CliError> {
    if n == 0 {
        Err(CliError::Usage("orders must be positive".into()))
    } else {
        Ok(n)
    }
}

/// Builds the document named by `spec`.
pub fn build(spec: &str) -> Result<TableDocument, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let named = |t| Ok(TableDocument::from_table(&t, Some(spec)));
    match parts.as_slice() {
        ["trivial", n] => named(trivial_quandle(number(n, "size")?)?),
        ["dihedral", n] => named(dihedral_quandle(number(n, "size")?)?),
        ["conj", g] => named(conj_quandle(&parse_group(g)?, 1)),
        ["conj", g, k] => named(conj_quandle(&parse_group(g)?, number(k, "exponent")?)),
        ["core", g] => named(core_quandle(&parse_group(g)?)),
        ["alexander", n, k] => {
            let n: usize = positive(number(n, "order")?)?;
            let k: usize = number(k, "multiplier")?;
            let phi = FiniteGroup::unit_automorphism(n, k % n)
                .map_err(|_| CliError::Usage(format!("{k} is not a unit modulo {n}")))?;
            named(alexander_quandle(&FiniteGroup::cyclic(n), &phi)?)
        }
        ["holomorph", g] => named(holomorph_quandle(&parse_group(g)?)),
        ["group", g] => Ok(TableDocument::from_group(&parse_group(g)?, Some(spec))),
        [name] => catalog_table(name)
            .map(|t| TableDocument::from_table(&t, Some(name)))
            .map_err(|_| CliError::Usage(format!("unknown table or construction `{spec}`"))),
        _ => Err(CliError::Usage(format!(
            "unknown table or construction `{spec}`"
        ))),
    }
}
