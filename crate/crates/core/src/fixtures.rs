//! Named example structures shared across the workspace.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::category::FiniteCategory;
use crate::operad::{operad_from_2cat, operad_from_moncat, CategoricalOperad};
use crate::operadic::{bouquets, from_2category, para, terminal_odot, UnaryOperadic2Cat};
use crate::twocat::{deloop, Finite2Category, StrictMonCat};
use crate::{Error, Result};

pub const MONCATS: &[&str] = &["trivial", "z2", "z3", "endo-z2", "z2-twisted", "z3-twisted", "poset-max"];
pub const TWOCATS: &[&str] = &["point", "arrow", "two-cell", "deloop-z2", "deloop-endo-z2"];
pub const OPERADIC: &[&str] = &["odot", "bq1", "bq2", "para-z2", "para-endo-z2", "slice-arrow", "slice-two-cell"];
pub const OPERADS: &[&str] = &[
    "terminal-odot",
    "terminal-bq2",
    "z2-odot",
    "endo-z2-odot",
    "z2-twisted-odot",
    "z3-twisted-odot",
    "arrow-bq2",
    "two-cell-bq2",
];

fn unknown(name: &str, available: &[&str]) -> Error {
    Error::UnknownFixture {
        name: name.to_string(),
        available: available.join(", "),
    }
}

/// One object with endomorphisms ℤ/2, tensored by multiplication.
pub fn endo_z2() -> StrictMonCat {
    StrictMonCat {
        category: FiniteCategory {
            objects: 1,
            morphisms: vec![(0, 0), (0, 0)],
            compose: [((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)].into_iter().collect(),
            ids: vec![0],
        },
        tensor_obj: vec![vec![0]],
        unit: 0,
        tensor_mor: vec![vec![0, 1], vec![1, 0]],
    }
}

/// Objects ℤ/n, each with automorphism group ℤ/2, tensored by addition in
/// both coordinates. Morphism `(x, s)` has index `2x + s`.
pub fn cyclic_with_automorphisms(n: usize) -> StrictMonCat {
    let idx = |x: usize, s: usize| 2 * x + s;
    let mut compose = std::collections::BTreeMap::new();
    for x in 0..n {
        for s in 0..2 {
            for t in 0..2 {
                compose.insert((idx(x, s), idx(x, t)), idx(x, (s + t) % 2));
            }
        }
    }
    StrictMonCat {
        category: FiniteCategory {
            objects: n,
            morphisms: (0..2 * n).map(|m| (m / 2, m / 2)).collect(),
            compose,
            ids: (0..n).map(|x| idx(x, 0)).collect(),
        },
        tensor_obj: (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect(),
        unit: 0,
        tensor_mor: (0..2 * n)
            .map(|m| (0..2 * n).map(|k| idx((m / 2 + k / 2) % n, (m + k) % 2)).collect())
            .collect(),
    }
}

/// The poset `0 ≤ 1` tensored by `max`, unit `0`.
pub fn poset_max() -> StrictMonCat {
    let pairs = [(0, 0), (1, 1), (0, 1)];
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("comparable");
    StrictMonCat {
        category: FiniteCategory {
            objects: 2,
            morphisms: pairs.to_vec(),
            compose: [((0, 0), 0), ((1, 1), 1), ((2, 0), 2), ((1, 2), 2)].into_iter().collect(),
            ids: vec![0, 1],
        },
        tensor_obj: vec![vec![0, 1], vec![1, 1]],
        unit: 0,
        tensor_mor: pairs
            .iter()
            .map(|&(a, b)| pairs.iter().map(|&(c, d)| index((a.max(c), b.max(d)))).collect())
            .collect(),
    }
}

/// `0 → 1` as a locally discrete 2-category.
pub fn arrow() -> Finite2Category {
    Finite2Category::from_category(&FiniteCategory {
        objects: 2,
        morphisms: vec![(0, 0), (1, 1), (0, 1)],
        compose: [((0, 0), 0), ((1, 1), 1), ((2, 0), 2), ((1, 2), 2)].into_iter().collect(),
        ids: vec![0, 1],
    })
}

/// Two parallel arrows `f, g : 0 → 1` and one 2-cell `ρ : f ⇒ g`.
pub fn two_cell() -> Finite2Category {
    let pairs = |v: &[((usize, usize), usize)]| v.iter().copied().collect();
    Finite2Category {
        objects: 2,
        one_cells: vec![(0, 0), (1, 1), (0, 1), (0, 1)],
        two_cells: vec![(0, 0), (1, 1), (2, 2), (3, 3), (2, 3)],
        compose1: pairs(&[((0, 0), 0), ((1, 1), 1), ((2, 0), 2), ((3, 0), 3), ((1, 2), 2), ((1, 3), 3)]),
        vcomp: pairs(&[
            ((0, 0), 0),
            ((1, 1), 1),
            ((2, 2), 2),
            ((3, 3), 3),
            ((4, 2), 4),
            ((3, 4), 4),
        ]),
        hcomp: pairs(&[
            ((0, 0), 0),
            ((1, 1), 1),
            ((2, 0), 2),
            ((3, 0), 3),
            ((4, 0), 4),
            ((1, 2), 2),
            ((1, 3), 3),
            ((1, 4), 4),
        ]),
        id1: vec![0, 1],
        id2: vec![0, 1, 2, 3],
    }
}

pub fn moncat(name: &str) -> Result<StrictMonCat> {
    Ok(match name {
        "trivial" => StrictMonCat::trivial(),
        "z2" => StrictMonCat::cyclic(2),
        "z3" => StrictMonCat::cyclic(3),
        "endo-z2" => endo_z2(),
        "z2-twisted" => cyclic_with_automorphisms(2),
        "z3-twisted" => cyclic_with_automorphisms(3),
        "poset-max" => poset_max(),
        _ => return Err(unknown(name, MONCATS)),
    })
}

pub fn twocat(name: &str) -> Result<Finite2Category> {
    Ok(match name {
        "point" => Finite2Category::terminal(),
        "arrow" => arrow(),
        "two-cell" => two_cell(),
        "deloop-z2" => deloop(&StrictMonCat::cyclic(2))?,
        "deloop-endo-z2" => deloop(&endo_z2())?,
        _ => return Err(unknown(name, TWOCATS)),
    })
}

pub fn operadic(name: &str) -> Result<UnaryOperadic2Cat> {
    match name {
        "odot" => Ok(terminal_odot()),
        "bq1" => bouquets(1),
        "bq2" => bouquets(2),
        "para-z2" => para(&StrictMonCat::cyclic(2)),
        "para-endo-z2" => para(&endo_z2()),
        "slice-arrow" => from_2category(&arrow()),
        "slice-two-cell" => from_2category(&two_cell()),
        _ => Err(unknown(name, OPERADIC)),
    }
}

pub fn operad(name: &str) -> Result<CategoricalOperad> {
    match name {
        "terminal-odot" => Ok(CategoricalOperad::terminal(&terminal_odot())),
        "terminal-bq2" => Ok(CategoricalOperad::terminal(&bouquets(2)?)),
        "z2-odot" => operad_from_moncat(&StrictMonCat::cyclic(2)),
        "endo-z2-odot" => operad_from_moncat(&endo_z2()),
        "z2-twisted-odot" => operad_from_moncat(&cyclic_with_automorphisms(2)),
        "z3-twisted-odot" => operad_from_moncat(&cyclic_with_automorphisms(3)),
        "arrow-bq2" => operad_from_2cat(&arrow()),
        "two-cell-bq2" => operad_from_2cat(&two_cell()),
        _ => Err(unknown(name, OPERADS)),
    }
}

/// The monoid of self-maps of `{0, .., n-1}` generated by `gens`, identity first.
fn transformation_monoid(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut elems = vec![(0..n).collect::<Vec<_>>()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let next: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if !elems.contains(&next) {
                elems.push(next);
            }
        }
        i += 1;
    }
    elems
}

/// The category with objects `{0, 1}`, one morphism `(i → j, m)` per `m ∈ M`,
/// composing by the monoid product. Locally discrete as a 2-category.
pub fn indiscrete_times_monoid(monoid: &[Vec<usize>]) -> Finite2Category {
    let k = monoid.len();
    let index = |i: usize, j: usize, m: usize| (i * 2 + j) * k + m;
    let mut morphisms = vec![(0, 0); 4 * k];
    for i in 0..2 {
        for j in 0..2 {
            for m in 0..k {
                morphisms[index(i, j, m)] = (i, j);
            }
        }
    }
    let product = |later: usize, earlier: usize| -> usize {
        let v: Vec<usize> = monoid[earlier].iter().map(|&x| monoid[later][x]).collect();
        monoid.iter().position(|w| *w == v).expect("monoid is closed")
    };
    let mut compose = std::collections::BTreeMap::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                for m in 0..k {
                    for m2 in 0..k {
                        compose.insert((index(j, l, m2), index(i, j, m)), index(i, l, product(m2, m)));
                    }
                }
            }
        }
    }
    Finite2Category::from_category(&FiniteCategory {
        objects: 2,
        morphisms,
        compose,
        ids: vec![index(0, 0, 0), index(1, 1, 0)],
    })
}

/// A random discrete operad over `bouquets(2)`, from a random transformation
/// monoid of order at most `max_order`.
pub fn random_discrete_bq2_operad<R: Rng>(rng: &mut R, max_order: usize) -> Result<CategoricalOperad> {
    let maps: Vec<Vec<usize>> = (0..4).map(|c| vec![c & 1, c >> 1]).collect();
    loop {
        let count = rng.gen_range(0..=2);
        let gens: Vec<Vec<usize>> = maps.choose_multiple(rng, count).cloned().collect();
        let monoid = transformation_monoid(2, &gens);
        if monoid.len() <= max_order {
            return operad_from_2cat(&indiscrete_times_monoid(&monoid));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::validate_operad;
    use crate::operadic::validate_operadic;
    use crate::twocat::{validate_2category, validate_moncat};
    use rand::SeedableRng;

    #[test]
    fn every_named_fixture_is_valid() {
        for n in MONCATS {
            assert!(validate_moncat(&moncat(n).unwrap()).is_valid(), "{n}");
        }
        for n in TWOCATS {
            let r = validate_2category(&twocat(n).unwrap());
            assert!(r.is_valid(), "{n}: {r}");
        }
        for n in OPERADIC {
            let r = validate_operadic(&operadic(n).unwrap());
            assert!(r.is_valid(), "{n}: {r}");
        }
        for n in OPERADS {
            let r = validate_operad(&operad(n).unwrap());
            assert!(r.is_valid(), "{n}: {r}");
        }
    }

    #[test]
    fn unknown_name_lists_alternatives() {
        let e = operadic("nope").unwrap_err();
        assert!(e.to_string().contains("odot"), "{e}");
    }

    #[test]
    fn random_operads_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let p = random_discrete_bq2_operad(&mut rng, 4).unwrap();
            assert!(validate_operad(&p).is_valid());
        }
    }
}
