//! Categorical operads over a unary operadic 2-category.
//!
//! Multiplication over a 1-cell `f : x → y` is a bifunctor
//! `P_y × P_{φ(f)} → P_x`, written `a ·_f b`.

use std::collections::BTreeMap;

use crate::category::{validate_category, FiniteCategory};
use crate::operadic::{terminal_odot, bouquets, OperadicFunctor, UnaryOperadic2Cat};
use crate::report::ValidationReport;
use crate::twocat::{validate_2category, validate_moncat, Finite2Category, StrictMonCat};
use crate::{Error, Result};

/// A functor of two variables as two flat tables indexed `[left][right]`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize, schemars::JsonSchema)]
pub struct Bifunctor {
    pub on_objects: Vec<Vec<usize>>,
    pub on_morphisms: Vec<Vec<usize>>,
}

impl Bifunctor {
    pub fn obj(&self, a: usize, b: usize) -> usize {
        self.on_objects[a][b]
    }

    pub fn mor(&self, m: usize, n: usize) -> usize {
        self.on_morphisms[m][n]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoricalOperad {
    pub base: UnaryOperadic2Cat,
    /// One category per object of the base.
    pub fibers: Vec<FiniteCategory>,
    /// One bifunctor per 1-cell of the base.
    pub mult: Vec<Bifunctor>,
    /// One unit object per component, living in the fiber over the trivial
    /// object.
    pub units: Vec<usize>,
}

impl CategoricalOperad {
    /// All fibers terminal.
    pub fn terminal(base: &UnaryOperadic2Cat) -> Self {
        let c = base.cat();
        Self {
            base: base.clone(),
            fibers: vec![FiniteCategory::terminal(); c.objects],
            mult: vec![
                Bifunctor {
                    on_objects: vec![vec![0]],
                    on_morphisms: vec![vec![0]],
                };
                c.one_cells.len()
            ],
            units: vec![0; base.components()],
        }
    }

    /// Fibers over trivial objects are terminal.
    pub fn is_one_connected(&self) -> bool {
        (0..self.base.components()).all(|k| {
            let f = &self.fibers[self.base.trivial(k)];
            f.objects == 1 && f.morphisms.len() == 1
        })
    }

    /// Every fiber's morphisms reordered by `(src, tgt)`, stable within a
    /// hom-set, with the multiplication tables relabelled to match.
    pub fn canonical(&self) -> CategoricalOperad {
        let (fibers, perms): (Vec<_>, Vec<_>) = self.fibers.iter().map(|f| f.canonical()).unzip();
        let c = self.base.cat();
        let phi1 = &self.base.maps().phi1;
        let mult = self
            .mult
            .iter()
            .enumerate()
            .map(|(q, m)| {
                let (x, y) = c.one_cells[q];
                let (pl, pr, po) = (&perms[y], &perms[phi1[q]], &perms[x]);
                let mut on_morphisms = m.on_morphisms.clone();
                for (a, row) in m.on_morphisms.iter().enumerate() {
                    for (b, &v) in row.iter().enumerate() {
                        on_morphisms[pl[a]][pr[b]] = po[v];
                    }
                }
                Bifunctor {
                    on_objects: m.on_objects.clone(),
                    on_morphisms,
                }
            })
            .collect();
        CategoricalOperad {
            base: self.base.clone(),
            fibers,
            mult,
            units: self.units.clone(),
        }
    }

    /// `e_c` for the component of object `x`.
    pub fn unit_of(&self, component: usize) -> usize {
        self.units[component]
    }

    pub fn check_shape(&self) -> Result<()> {
        let c = self.base.cat();
        if self.fibers.len() != c.objects
            || self.mult.len() != c.one_cells.len()
            || self.units.len() != self.base.components()
        {
            return Err(Error::malformed("operad tables do not match the base"));
        }
        for fiber in &self.fibers {
            fiber.check_shape()?;
        }
        let phi1 = &self.base.maps().phi1;
        for (f, m) in self.mult.iter().enumerate() {
            let (x, y) = c.one_cells[f];
            let (left, right, out) = (&self.fibers[y], &self.fibers[phi1[f]], &self.fibers[x]);
            let shape_ok = |t: &Vec<Vec<usize>>, l: usize, r: usize, o: usize| {
                t.len() == l && t.iter().all(|row| row.len() == r && row.iter().all(|&v| v < o))
            };
            if !shape_ok(&m.on_objects, left.objects, right.objects, out.objects)
                || !shape_ok(
                    &m.on_morphisms,
                    left.morphisms.len(),
                    right.morphisms.len(),
                    out.morphisms.len(),
                )
            {
                return Err(Error::malformed(format!("multiplication table over 1-cell {f} has the wrong shape")));
            }
        }
        for (k, &e) in self.units.iter().enumerate() {
            if e >= self.fibers[self.base.trivial(k)].objects {
                return Err(Error::malformed(format!("unit of component {k} out of range")));
            }
        }
        Ok(())
    }
}

/// Every violated instance of the operad laws.
pub fn validate_operad(p: &CategoricalOperad) -> ValidationReport {
    let mut r = ValidationReport::new();
    if let Err(e) = p.check_shape() {
        r.push("shape", e.to_string());
        return r;
    }
    let o = &p.base;
    let c = o.cat();
    let maps = o.maps();
    for (x, fiber) in p.fibers.iter().enumerate() {
        let fr = validate_category(fiber);
        for v in fr.violations {
            r.push(format!("fiber {x}: {}", v.rule), v.witness);
        }
    }
    if !r.is_valid() {
        return r;
    }
    for (f, m) in p.mult.iter().enumerate() {
        let (x, y) = c.one_cells[f];
        let (pl, pr, po) = (&p.fibers[y], &p.fibers[maps.phi1[f]], &p.fibers[x]);
        for a in 0..pl.objects {
            for b in 0..pr.objects {
                if m.mor(pl.id(a), pr.id(b)) != po.id(m.obj(a, b)) {
                    r.push("bifunctor preserves identities", format!("1-cell {f}, objects ({a}, {b})"));
                }
            }
        }
        for (mi, &(ms, mt)) in pl.morphisms.iter().enumerate() {
            for (ni, &(ns, nt)) in pr.morphisms.iter().enumerate() {
                if po.morphisms[m.mor(mi, ni)] != (m.obj(ms, ns), m.obj(mt, nt)) {
                    r.push("bifunctor typing", format!("1-cell {f}, morphisms ({mi}, {ni})"));
                }
            }
        }
        for (&(m2, m1), &mm) in &pl.compose {
            for (&(n2, n1), &nn) in &pr.compose {
                if po.comp(m.mor(m2, n2), m.mor(m1, n1)) != Some(m.mor(mm, nn)) {
                    r.push(
                        "bifunctor preserves composition",
                        format!("1-cell {f}, ({m2}∘{m1}, {n2}∘{n1})"),
                    );
                }
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    // (a ·_g b) ·_f c = a ·_h (b ·_{φ(α)} c)
    for (t, tri) in o.nerve().triangles.iter().enumerate() {
        let (f, g, h) = (tri.f, tri.g, tri.h);
        let pa = &p.fibers[c.tgt1(g)];
        let pb = &p.fibers[maps.phi1[g]];
        let pc = &p.fibers[maps.phi1[f]];
        let phi = maps.phi2[t];
        let (mf, mg, mh, mp) = (&p.mult[f], &p.mult[g], &p.mult[h], &p.mult[phi]);
        'objects: for a in 0..pa.objects {
            for b in 0..pb.objects {
                for cc in 0..pc.objects {
                    let lhs = mf.obj(mg.obj(a, b), cc);
                    let rhs = mh.obj(a, mp.obj(b, cc));
                    if lhs != rhs {
                        r.push(
                            "associativity on objects",
                            format!("triangle {t} (f={f}, g={g}, h={h}), objects ({a}, {b}, {cc}): {lhs} != {rhs}"),
                        );
                        break 'objects;
                    }
                }
            }
        }
        'morphisms: for a in 0..pa.morphisms.len() {
            for b in 0..pb.morphisms.len() {
                for cc in 0..pc.morphisms.len() {
                    let lhs = mf.mor(mg.mor(a, b), cc);
                    let rhs = mh.mor(a, mp.mor(b, cc));
                    if lhs != rhs {
                        r.push(
                            "associativity on morphisms",
                            format!("triangle {t} (f={f}, g={g}, h={h}), morphisms ({a}, {b}, {cc}): {lhs} != {rhs}"),
                        );
                        break 'morphisms;
                    }
                }
            }
        }
    }
    // a ·_{1_x} e_{φ(x)} = a and e_{π(x)} ·_{u_x} a = a
    for x in 0..c.objects {
        let px = &p.fibers[x];
        let right_unit = p.units[maps.phi0[x]];
        let right_fiber = &p.fibers[o.trivial(maps.phi0[x])];
        let left_unit = p.units[o.pi(x)];
        let left_fiber = &p.fibers[o.trivial(o.pi(x))];
        let (mi, mu) = (&p.mult[c.id1(x)], &p.mult[maps.u0[x]]);
        for a in 0..px.objects {
            if mi.obj(a, right_unit) != a {
                r.push("right unit", format!("object {x}, element {a}"));
            }
            if mu.obj(left_unit, a) != a {
                r.push("left unit", format!("object {x}, element {a}"));
            }
        }
        for m in 0..px.morphisms.len() {
            if mi.mor(m, right_fiber.id(right_unit)) != m {
                r.push("right unit on morphisms", format!("object {x}, morphism {m}"));
            }
            if mu.mor(left_fiber.id(left_unit), m) != m {
                r.push("left unit on morphisms", format!("object {x}, morphism {m}"));
            }
        }
    }
    r
}

/// A strict monoidal category as an operad over ⊙.
pub fn operad_from_moncat(v: &StrictMonCat) -> Result<CategoricalOperad> {
    validate_moncat(v).into_result("monoidal category")?;
    Ok(CategoricalOperad {
        base: terminal_odot(),
        fibers: vec![v.category.clone()],
        mult: vec![Bifunctor {
            on_objects: v.tensor_obj.clone(),
            on_morphisms: v.tensor_mor.clone(),
        }],
        units: vec![v.unit],
    })
}

pub fn moncat_from_operad(p: &CategoricalOperad) -> Result<StrictMonCat> {
    if p.base.sizes() != vec![1; 5] {
        return Err(Error::Precondition("base is not the terminal operadic category".into()));
    }
    validate_operad(p).into_result("operad")?;
    Ok(StrictMonCat {
        category: p.fibers[0].clone(),
        tensor_obj: p.mult[0].on_objects.clone(),
        unit: p.units[0],
        tensor_mor: p.mult[0].on_morphisms.clone(),
    })
}

/// Hom-category `K(a, b)` with local indices, plus the maps back to `K`.
pub struct HomCategory {
    pub category: FiniteCategory,
    pub one_cells: Vec<usize>,
    pub two_cells: Vec<usize>,
}

pub fn hom_category(k: &Finite2Category, a: usize, b: usize) -> HomCategory {
    let one_cells: Vec<usize> = (0..k.one_cells.len()).filter(|&f| k.one_cells[f] == (a, b)).collect();
    let local1: BTreeMap<usize, usize> = one_cells.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let two_cells: Vec<usize> = (0..k.two_cells.len())
        .filter(|&t| local1.contains_key(&k.src2(t)))
        .collect();
    let local2: BTreeMap<usize, usize> = two_cells.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let morphisms = two_cells
        .iter()
        .map(|&t| (local1[&k.src2(t)], local1[&k.tgt2(t)]))
        .collect();
    let compose = k
        .vcomp
        .iter()
        .filter(|(&(b2, a2), _)| local2.contains_key(&b2) && local2.contains_key(&a2))
        .map(|(&(b2, a2), &c)| ((local2[&b2], local2[&a2]), local2[&c]))
        .collect();
    let ids = one_cells.iter().map(|&f| local2[&k.id2(f)]).collect();
    HomCategory {
        category: FiniteCategory {
            objects: one_cells.len(),
            morphisms,
            compose,
            ids,
        },
        one_cells,
        two_cells,
    }
}

/// A 2-category on objects `0..n` as an operad over the bouquets on `n`
/// letters: fibers are hom-categories and multiplication is composition.
pub fn operad_from_2cat(k: &Finite2Category) -> Result<CategoricalOperad> {
    validate_2category(k).into_result("2-category")?;
    let n = k.objects;
    let base = bouquets(n)?;
    let homs: Vec<HomCategory> = (0..n * n).map(|x| hom_category(k, x / n, x % n)).collect();
    let local = |x: usize, cells: &[usize], cell: usize| -> usize {
        cells.iter().position(|&c| c == cell).unwrap_or_else(|| panic!("cell {cell} not in hom {x}"))
    };
    let c = base.cat();
    let phi1 = &base.maps().phi1;
    let mult = (0..c.one_cells.len())
        .map(|q| {
            let (x, y) = c.one_cells[q];
            let (hl, hr, ho) = (&homs[y], &homs[phi1[q]], &homs[x]);
            let on_objects = hl
                .one_cells
                .iter()
                .map(|&g| {
                    hr.one_cells
                        .iter()
                        .map(|&f| local(x, &ho.one_cells, k.comp(g, f)))
                        .collect()
                })
                .collect();
            let on_morphisms = hl
                .two_cells
                .iter()
                .map(|&bb| {
                    hr.two_cells
                        .iter()
                        .map(|&aa| local(x, &ho.two_cells, k.horiz(bb, aa)))
                        .collect()
                })
                .collect();
            Bifunctor {
                on_objects,
                on_morphisms,
            }
        })
        .collect();
    let units = (0..n)
        .map(|b| local(b * n + b, &homs[b * n + b].one_cells, k.id1(b)))
        .collect();
    Ok(CategoricalOperad {
        fibers: homs.into_iter().map(|h| h.category).collect(),
        base,
        mult,
        units,
    })
}

/// Restriction along an operadic functor `F : O → P`.
pub fn restrict_operad(f: &OperadicFunctor, q: &CategoricalOperad) -> Result<CategoricalOperad> {
    let report = crate::operadic::validate_operadic_functor(f);
    report.into_result("operadic functor")?;
    if q.base != f.target {
        return Err(Error::MismatchedTargets("operad does not live over the functor's target".into()));
    }
    validate_operad(q).into_result("operad")?;
    let lm = &f.map.level_map;
    let p = CategoricalOperad {
        base: f.source.clone(),
        fibers: lm[1].iter().map(|&x| q.fibers[x].clone()).collect(),
        mult: lm[2].iter().map(|&g| q.mult[g].clone()).collect(),
        units: lm[0].iter().map(|&k| q.units[k]).collect(),
    };
    p.check_shape()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operadic::{bouquets, para};

    #[test]
    fn terminal_operads_are_valid() {
        for base in [terminal_odot(), bouquets(2).unwrap(), para(&StrictMonCat::cyclic(2)).unwrap()] {
            let p = CategoricalOperad::terminal(&base);
            assert!(validate_operad(&p).is_valid());
            assert!(p.is_one_connected());
        }
    }

    #[test]
    fn moncat_round_trip() {
        let v = StrictMonCat::cyclic(2);
        let p = operad_from_moncat(&v).unwrap();
        assert!(validate_operad(&p).is_valid());
        assert_eq!(moncat_from_operad(&p).unwrap(), v);
    }

    #[test]
    fn mutated_associativity_names_triangle() {
        let mut p = operad_from_moncat(&StrictMonCat::cyclic(3)).unwrap();
        p.mult[0].on_objects[1][1] = 0;
        p.mult[0].on_morphisms[1][1] = 0;
        let r = validate_operad(&p);
        assert!(r.mentions("associativity on objects"), "{r}");
        assert!(r.mentions("triangle 0"), "{r}");
    }

    #[test]
    fn deloop_as_bouquet_operad() {
        let k = crate::twocat::deloop(&StrictMonCat::cyclic(2)).unwrap();
        let p = operad_from_2cat(&k).unwrap();
        assert_eq!(p.fibers.len(), 1);
        assert_eq!(p.fibers[0].objects, 2);
        assert!(validate_operad(&p).is_valid());
    }
}
