//! The operadic Grothendieck construction of a categorical operad, built
//! cell by cell and then certified.
//!
//! Base notation: ψ for the base φ maps and v for the base u maps.

use std::collections::{BTreeMap, HashMap};

use crate::operad::{validate_operad, CategoricalOperad};
use crate::operadic::{
    assemble_simplicial, connected_components, validate_operadic, validate_operadic_functor, OperadicFunctor,
    StructureMaps, UnaryOperadic2Cat,
};
use crate::nerve::duskin_nerve_labelled;
use crate::operad::hom_category;
use crate::simplicial::{SSetIso, SSetMap};
use crate::twocat::{lax_slice_sum, validate_2category, Finite2Category, SliceArrow, StrictMonCat};
use crate::{Error, Result};

/// `(f, p, α) : (A, a) → (B, b)` with `α : b ·_f p → a` in `P_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TotalArrow {
    pub src: usize,
    pub tgt: usize,
    pub f: usize,
    pub p: usize,
    pub alpha: usize,
}

/// `(ρ, γ)` between parallel total arrows, with `γ : P_ρ(p) → q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TotalTwoCell {
    pub src: usize,
    pub tgt: usize,
    pub rho: usize,
    pub gamma: usize,
}

/// The total operadic 2-category with its projection. Cells keep their labels.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub base: UnaryOperadic2Cat,
    pub operad: CategoricalOperad,
    pub total: UnaryOperadic2Cat,
    pub projection: OperadicFunctor,
    /// `(A, a)` per total object.
    pub objects: Vec<(usize, usize)>,
    pub arrows: Vec<TotalArrow>,
    pub two_cells: Vec<TotalTwoCell>,
    object_index: HashMap<(usize, usize), usize>,
    arrow_index: HashMap<TotalArrow, usize>,
}

impl Grothendieck {
    pub fn object(&self, base_object: usize, element: usize) -> Option<usize> {
        self.object_index.get(&(base_object, element)).copied()
    }

    pub fn arrow(&self, a: TotalArrow) -> Option<usize> {
        self.arrow_index.get(&a).copied()
    }

    /// The lift `(g, p, 1)` from `(A, x ·_g p)` to `a = (B, x)`, for a
    /// base 1-cell `g` and `b = (ψ(g), p)`.
    pub fn canonical_lift(&self, a: usize, b: usize, g: usize) -> Option<usize> {
        let c = self.base.cat();
        let (big_b, x) = self.objects[a];
        let (psi, p) = self.objects[b];
        if c.tgt1(g) != big_b || self.base.maps().phi1[g] != psi {
            return None;
        }
        let src_obj = c.src1(g);
        let y = self.operad.mult[g].obj(x, p);
        let src = self.object(src_obj, y)?;
        let alpha = self.operad.fibers[src_obj].id(y);
        self.arrow(TotalArrow {
            src,
            tgt: a,
            f: g,
            p,
            alpha,
        })
    }

    /// Every lift of the canonical splitting, keyed by `(a, b, g)`.
    pub fn canonical_lifts(&self) -> BTreeMap<(usize, usize, usize), usize> {
        let c = self.base.cat();
        let phi1 = &self.base.maps().phi1;
        let mut lifts = BTreeMap::new();
        for a in 0..self.objects.len() {
            for b in 0..self.objects.len() {
                for (g, &fiber) in phi1.iter().enumerate() {
                    if c.tgt1(g) == self.objects[a].0 && fiber == self.objects[b].0 {
                        if let Some(l) = self.canonical_lift(a, b, g) {
                            lifts.insert((a, b, g), l);
                        }
                    }
                }
            }
        }
        lifts
    }
}

struct Builder<'a> {
    base: &'a UnaryOperadic2Cat,
    p: &'a CategoricalOperad,
}

impl Builder<'_> {
    /// `P_ρ(p) = p ·_{ψ(ρ̄)} e`, where ρ̄ is ρ read as a triangle `f ∘ 1 ⇒ g`.
    fn transport_mult(&self, rho: usize) -> (usize, usize) {
        let c = self.base.cat();
        let f = c.src2(rho);
        let a = c.src1(f);
        let bar = self
            .base
            .nerve()
            .triangle(c.id1(a), f, rho)
            .expect("every 2-cell is a triangle over an identity");
        let psi = self.base.maps().phi2[bar];
        let unit = self.p.units[self.base.maps().phi0[a]];
        (psi, unit)
    }

    fn transport_obj(&self, rho: usize, p: usize) -> usize {
        let (psi, e) = self.transport_mult(rho);
        self.p.mult[psi].obj(p, e)
    }

    fn transport_mor(&self, rho: usize, gamma: usize) -> usize {
        let (psi, e) = self.transport_mult(rho);
        let e_fiber = &self.p.fibers[self.base.maps().phi1[psi]];
        self.p.mult[psi].mor(gamma, e_fiber.id(e))
    }
}

/// The total operadic 2-category `∫P` and its projection to the base.
pub fn grothendieck(base: &UnaryOperadic2Cat, p: &CategoricalOperad) -> Result<Grothendieck> {
    validate_operadic(base).into_result("operadic 2-category")?;
    if &p.base != base {
        return Err(Error::MismatchedTargets("operad does not live over this base".into()));
    }
    validate_operad(p).into_result("operad")?;
    let c = base.cat();
    let psi = base.maps();
    let bn = base.nerve();
    let b = Builder { base, p };
    let fib = |x: usize| &p.fibers[x];

    let mut objects = Vec::new();
    for a in 0..c.objects {
        for x in 0..fib(a).objects {
            objects.push((a, x));
        }
    }
    let object_index: HashMap<(usize, usize), usize> =
        objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();

    let mut arrows = Vec::new();
    for (src, &(a, x)) in objects.iter().enumerate() {
        for f in c.one_cells_from(a) {
            let bb = c.tgt1(f);
            for y in 0..fib(bb).objects {
                let tgt = object_index[&(bb, y)];
                for pp in 0..fib(psi.phi1[f]).objects {
                    let z = p.mult[f].obj(y, pp);
                    for alpha in fib(a).hom(z, x) {
                        arrows.push(TotalArrow {
                            src,
                            tgt,
                            f,
                            p: pp,
                            alpha,
                        });
                    }
                }
            }
        }
    }
    arrows.sort();
    let arrow_index: HashMap<TotalArrow, usize> =
        arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let find_arrow = |a: TotalArrow| -> Result<usize> {
        arrow_index
            .get(&a)
            .copied()
            .ok_or_else(|| Error::internal(format!("total arrow {a:?} missing")))
    };

    let mut compose1 = BTreeMap::new();
    for (i, first) in arrows.iter().enumerate() {
        for (j, second) in arrows.iter().enumerate() {
            if second.src != first.tgt {
                continue;
            }
            let (a, _) = objects[first.src];
            let gf = c.comp(second.f, first.f);
            let t = base.identity_triangle(first.f, second.f);
            let pp = p.mult[psi.phi2[t]].obj(second.p, first.p);
            let id_p = fib(psi.phi1[first.f]).id(first.p);
            let whiskered = p.mult[first.f].mor(second.alpha, id_p);
            let alpha = fib(a)
                .comp(first.alpha, whiskered)
                .ok_or_else(|| Error::internal("composite 1-cell is not well typed"))?;
            let k = find_arrow(TotalArrow {
                src: first.src,
                tgt: second.tgt,
                f: gf,
                p: pp,
                alpha,
            })?;
            compose1.insert((j, i), k);
        }
    }

    let mut two_cells = Vec::new();
    let mut by_endpoints: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, a) in arrows.iter().enumerate() {
        by_endpoints.entry((a.src, a.tgt)).or_default().push(i);
    }
    for group in by_endpoints.values() {
        for &s in group {
            for &t in group {
                let (sa, ta) = (arrows[s], arrows[t]);
                let (a, _) = objects[sa.src];
                let (_, y) = objects[sa.tgt];
                let bb = c.tgt1(sa.f);
                for rho in c.two_cells_between(sa.f, ta.f) {
                    let moved = b.transport_obj(rho, sa.p);
                    let q_fiber = fib(psi.phi1[ta.f]);
                    for gamma in q_fiber.hom(moved, ta.p) {
                        let w = p.mult[ta.f].mor(fib(bb).id(y), gamma);
                        if fib(a).comp(ta.alpha, w) == Some(sa.alpha) {
                            two_cells.push(TotalTwoCell {
                                src: s,
                                tgt: t,
                                rho,
                                gamma,
                            });
                        }
                    }
                }
            }
        }
    }
    two_cells.sort();
    let two_index: HashMap<TotalTwoCell, usize> =
        two_cells.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let find_two = |t: TotalTwoCell| -> Result<usize> {
        two_index
            .get(&t)
            .copied()
            .ok_or_else(|| Error::internal(format!("total 2-cell {t:?} missing")))
    };

    let mut vcomp = BTreeMap::new();
    for (i, first) in two_cells.iter().enumerate() {
        for (j, second) in two_cells.iter().enumerate() {
            if second.src != first.tgt {
                continue;
            }
            let k_fiber = fib(psi.phi1[arrows[second.tgt].f]);
            let moved = b.transport_mor(second.rho, first.gamma);
            let gamma = k_fiber
                .comp(second.gamma, moved)
                .ok_or_else(|| Error::internal("vertical composite is not well typed"))?;
            let k = find_two(TotalTwoCell {
                src: first.src,
                tgt: second.tgt,
                rho: c.vert(second.rho, first.rho),
                gamma,
            })?;
            vcomp.insert((j, i), k);
        }
    }
    let mut hcomp = BTreeMap::new();
    for (i, first) in two_cells.iter().enumerate() {
        for (j, second) in two_cells.iter().enumerate() {
            if arrows[second.src].src != arrows[first.src].tgt {
                continue;
            }
            let src = compose1[&(second.src, first.src)];
            let tgt = compose1[&(second.tgt, first.tgt)];
            let t = base.identity_triangle(arrows[first.tgt].f, arrows[second.tgt].f);
            let gamma = p.mult[psi.phi2[t]].mor(second.gamma, first.gamma);
            let k = find_two(TotalTwoCell {
                src,
                tgt,
                rho: c.horiz(second.rho, first.rho),
                gamma,
            })?;
            hcomp.insert((j, i), k);
        }
    }
    let id1 = objects
        .iter()
        .enumerate()
        .map(|(i, &(a, x))| {
            find_arrow(TotalArrow {
                src: i,
                tgt: i,
                f: c.id1(a),
                p: p.units[psi.phi0[a]],
                alpha: fib(a).id(x),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let id2 = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            find_two(TotalTwoCell {
                src: i,
                tgt: i,
                rho: c.id2(a.f),
                gamma: fib(psi.phi1[a.f]).id(a.p),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = Finite2Category {
        objects: objects.len(),
        one_cells: arrows.iter().map(|a| (a.src, a.tgt)).collect(),
        two_cells: two_cells.iter().map(|t| (t.src, t.tgt)).collect(),
        compose1,
        vcomp,
        hcomp,
        id1,
        id2,
    };
    let report = validate_2category(&total);
    if !report.is_valid() {
        return Err(Error::internal(format!("total is not a 2-category: {report}")));
    }

    let tn = duskin_nerve_labelled(&total)?;
    let (k, tpi) = connected_components(&total);
    let mut to_base_comp = vec![usize::MAX; k];
    for (i, &(a, _)) in objects.iter().enumerate() {
        to_base_comp[tpi[i]] = base.pi(a);
    }
    let mut from_base_comp = vec![usize::MAX; base.components()];
    for (tk, &bc) in to_base_comp.iter().enumerate() {
        if from_base_comp[bc] != usize::MAX {
            return Err(Error::internal("two total components over one base component"));
        }
        from_base_comp[bc] = tk;
    }
    if from_base_comp.contains(&usize::MAX) {
        return Err(Error::internal("a base component has no total component above it"));
    }

    let base_triangle = |t: usize| -> Result<usize> {
        let tri = tn.triangles[t];
        bn.triangle(arrows[tri.f].f, arrows[tri.g].f, two_cells[tri.alpha].rho)
            .ok_or_else(|| Error::internal("projected triangle missing"))
    };
    let triangle_of = |f: usize, g: usize, h: usize, rho: usize, gamma: usize| -> Result<usize> {
        let cell = find_two(TotalTwoCell {
            src: total.comp(g, f),
            tgt: h,
            rho,
            gamma,
        })?;
        tn.triangle(f, g, cell)
            .ok_or_else(|| Error::internal("total triangle missing"))
    };

    let phi0 = objects.iter().map(|&(a, _)| from_base_comp[psi.phi0[a]]).collect();
    let phi1 = arrows
        .iter()
        .map(|a| {
            object_index
                .get(&(psi.phi1[a.f], a.p))
                .copied()
                .ok_or_else(|| Error::internal("φ of a total arrow missing"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let phi2 = (0..tn.triangles.len())
        .map(|t| {
            let tri = tn.triangles[t];
            let (fa, ga, ha) = (arrows[tri.f], arrows[tri.g], arrows[tri.h]);
            let cell = two_cells[tri.alpha];
            find_arrow(TotalArrow {
                src: object_index[&(psi.phi1[ha.f], ha.p)],
                tgt: object_index[&(psi.phi1[ga.f], ga.p)],
                f: psi.phi2[base_triangle(t)?],
                p: fa.p,
                alpha: cell.gamma,
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let phi3 = tn
        .simplices
        .iter()
        .map(|s| {
            let [a, b, c, d] = s.faces();
            let faces = [base_triangle(a)?, base_triangle(b)?, base_triangle(c)?, base_triangle(d)?];
            let sigma = bn
                .simplex(faces)
                .ok_or_else(|| Error::internal("projected 3-simplex missing"))?;
            let rho = bn.triangles[psi.phi3[sigma]].alpha;
            let gamma = two_cells[tn.triangles[s.alpha012].alpha].gamma;
            triangle_of(phi2[s.alpha013], phi2[s.alpha123], phi2[s.alpha023], rho, gamma)
        })
        .collect::<Result<Vec<usize>>>()?;
    let u_neg1: Vec<usize> = to_base_comp
        .iter()
        .map(|&bc| object_index[&(psi.u_neg1[bc], p.units[bc])])
        .collect();
    let u0 = objects
        .iter()
        .enumerate()
        .map(|(i, &(a, x))| {
            find_arrow(TotalArrow {
                src: i,
                tgt: u_neg1[from_base_comp[base.pi(a)]],
                f: psi.u0[a],
                p: x,
                alpha: fib(a).id(x),
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let u1 = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let rho = bn.triangles[psi.u1[a.f]].alpha;
            triangle_of(i, u0[a.tgt], u0[a.src], rho, a.alpha)
        })
        .collect::<Result<Vec<usize>>>()?;
    let u2 = tn
        .triangles
        .iter()
        .enumerate()
        .map(|(t, tri)| {
            tn.simplex([u1[tri.g], u1[tri.h], u1[tri.f], t])
                .ok_or_else(|| Error::internal("u on a total triangle is not a 3-simplex"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let maps = StructureMaps {
        phi0,
        phi1,
        phi2,
        phi3,
        u_neg1,
        u0,
        u1,
        u2,
    };
    let total_o = UnaryOperadic2Cat::new(total, maps)?;
    let report = validate_operadic(&total_o);
    if !report.is_valid() {
        return Err(Error::internal(format!("total fails the operadic conditions: {report}")));
    }

    let level_map = vec![
        to_base_comp,
        objects.iter().map(|&(a, _)| a).collect(),
        arrows.iter().map(|a| a.f).collect(),
        (0..tn.triangles.len()).map(base_triangle).collect::<Result<Vec<_>>>()?,
        tn.simplices
            .iter()
            .map(|s| {
                let faces = s.faces().map(|t| base_triangle(t).unwrap_or(usize::MAX));
                bn.simplex(faces)
                    .ok_or_else(|| Error::internal("projected 3-simplex missing"))
            })
            .collect::<Result<Vec<_>>>()?,
    ];
    let projection = OperadicFunctor::new(&total_o, base, level_map)?;
    let report = validate_operadic_functor(&projection);
    if !report.is_valid() {
        return Err(Error::internal(format!("projection is not operadic: {report}")));
    }
    Ok(Grothendieck {
        base: base.clone(),
        operad: p.clone(),
        total: total_o,
        projection,
        objects,
        arrows,
        two_cells,
        object_index,
        arrow_index,
    })
}

/// An explicit comparison map, certified cellwise.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub what: String,
    /// Cells checked across all levels.
    pub cells: usize,
    pub iso: Option<SSetIso>,
}

/// Extends a map given below level 3 to the assembled
/// simplicial sets and certifies it as an isomorphism. π0 follows from
/// trivial objects and 3-simplices from their faces.
pub fn certify_cell_map(
    source: &UnaryOperadic2Cat,
    target: &UnaryOperadic2Cat,
    objects: Vec<usize>,
    arrows: Vec<usize>,
    triangles: Vec<usize>,
) -> Result<SSetIso> {
    let components = (0..source.components())
        .map(|k| target.pi(objects[source.trivial(k)]))
        .collect();
    let tn = target.nerve();
    let simplices = source
        .nerve()
        .simplices
        .iter()
        .enumerate()
        .map(|(i, s)| {
            tn.simplex(s.faces().map(|t| triangles[t]))
                .ok_or_else(|| Error::Certification(format!("3-simplex {i} has no image")))
        })
        .collect::<Result<Vec<_>>>()?;
    let levels = vec![components, objects, arrows, triangles, simplices];
    let map = SSetMap::new(assemble_simplicial(source)?, assemble_simplicial(target)?, levels)?;
    if let Some(v) = map.validate().violations.first() {
        return Err(Error::Certification(format!("{}: {}", v.rule, v.witness)));
    }
    if !map.is_bijective() {
        return Err(Error::Certification("comparison is not levelwise bijective".into()));
    }
    SSetIso::certify(map)
}

/// Compares `∫P` with the lax-slice operadic 2-category `target` of `k`,
/// when every fiber of `P` is a hom-category of `k`. `objects[x][i]` and
/// `morphisms[x][i]` name the 1-cell and 2-cell of `k` behind entry `i` of
/// the fiber over `x`.
pub fn slice_comparison(
    g: &Grothendieck,
    k: &Finite2Category,
    target: &UnaryOperadic2Cat,
    objects: &[Vec<usize>],
    morphisms: &[Vec<usize>],
) -> Result<IsoCertificate> {
    let slice = lax_slice_sum(k)?;
    if &slice.category != target.cat() {
        return Err(Error::MismatchedTargets("target is not the lax slice sum".into()));
    }
    let psi1 = &g.base.maps().phi1;
    let missing = |what: String| Error::Certification(format!("{what} has no image"));
    let obj_map: Vec<usize> = g.objects.iter().map(|&(a, x)| objects[a][x]).collect();
    let arrow_map = g
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let key = SliceArrow {
                h: obj_map[a.src],
                g: obj_map[a.tgt],
                f: objects[psi1[a.f]][a.p],
                alpha: morphisms[g.objects[a.src].0][a.alpha],
            };
            slice.arrow_index.get(&key).copied().ok_or_else(|| missing(format!("1-cell {i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let two_map = g
        .two_cells
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let fiber = psi1[g.arrows[t.tgt].f];
            let key = (arrow_map[t.src], arrow_map[t.tgt], morphisms[fiber][t.gamma]);
            slice.two_cell_index.get(&key).copied().ok_or_else(|| missing(format!("2-cell {i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let tn = target.nerve();
    let tri_map = g
        .total
        .nerve()
        .triangles
        .iter()
        .enumerate()
        .map(|(i, t)| {
            tn.triangle(arrow_map[t.f], arrow_map[t.g], two_map[t.alpha])
                .ok_or_else(|| missing(format!("triangle {i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = certify_cell_map(&g.total, target, obj_map, arrow_map, tri_map)?;
    Ok(IsoCertificate {
        what: "total ≅ lax slice".into(),
        cells: iso.map().level_map.iter().map(Vec::len).sum(),
        iso: Some(iso),
    })
}

/// Fiber labels for `operad_from_2cat(k)`, as expected by [`slice_comparison`].
pub fn hom_labels(k: &Finite2Category) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = k.objects;
    (0..n * n)
        .map(|x| {
            let h = hom_category(k, x / n, x % n);
            (h.one_cells, h.two_cells)
        })
        .unzip()
}

/// Fiber labels for `operad_from_moncat(m)` against `para(m)`.
pub fn moncat_labels(m: &StrictMonCat) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let c = &m.category;
    (vec![(0..c.objects).collect()], vec![(0..c.morphisms.len()).collect()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::operadic::{from_2category, para, terminal_odot};
    use crate::twocat::StrictMonCat;

    fn total_of(name: &str) -> Grothendieck {
        let p = fixtures::operad(name).unwrap();
        grothendieck(&p.base, &p).unwrap()
    }

    #[test]
    fn terminal_over_odot_is_odot() {
        let g = total_of("terminal-odot");
        assert_eq!(g.total, terminal_odot());
    }

    #[test]
    fn sizes_match_expected_totals() {
        let expect = [
            ("z2-odot", para(&StrictMonCat::cyclic(2)).unwrap()),
            ("endo-z2-odot", para(&fixtures::endo_z2()).unwrap()),
            ("arrow-bq2", from_2category(&fixtures::arrow()).unwrap()),
            ("two-cell-bq2", from_2category(&fixtures::two_cell()).unwrap()),
        ];
        for (name, o) in expect {
            assert_eq!(total_of(name).total.sizes(), o.sizes(), "{name}");
        }
    }

    #[test]
    fn totals_are_isomorphic_to_lax_slices() {
        for m in [StrictMonCat::cyclic(2), fixtures::endo_z2()] {
            let p = crate::operad::operad_from_moncat(&m).unwrap();
            let g = grothendieck(&p.base, &p).unwrap();
            let (objs, mors) = moncat_labels(&m);
            let k = crate::twocat::deloop(&m).unwrap();
            slice_comparison(&g, &k, &para(&m).unwrap(), &objs, &mors).unwrap();
        }
        for k in [fixtures::arrow(), fixtures::two_cell(), crate::twocat::deloop(&fixtures::endo_z2()).unwrap()] {
            let p = crate::operad::operad_from_2cat(&k).unwrap();
            let g = grothendieck(&p.base, &p).unwrap();
            let (objs, mors) = hom_labels(&k);
            let cert = slice_comparison(&g, &k, &from_2category(&k).unwrap(), &objs, &mors).unwrap();
            assert!(cert.cells > 0);
        }
    }

    #[test]
    fn every_fixture_operad_has_a_total() {
        for name in fixtures::OPERADS {
            total_of(name);
        }
    }
}
