//! Split operadic fibrations and the operads they classify. Extraction
//! recovers the fiber operad, and both round trips through the Grothendieck
//! construction are certified here.
//!
//! Cells are read in the assembled simplicial sets of total and base. A lift
//! key `(a, b, g)` has `a, b` total objects and `g` a base 1-cell with
//! `d0 g = p(a)` and `d2 g = p(b)`.
//!
//! Fiber orientation: a total quasibijection `t : s → s'` over an identity is
//! the fiber morphism `s' → s`. This is the reading under which a 1-cell
//! `(1, e, α)` of `∫P` gives back `α`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::category::FiniteCategory;
use crate::grothendieck::{certify_cell_map, grothendieck, IsoCertificate};
use crate::operad::{validate_operad, Bifunctor, CategoricalOperad};
use crate::operadic::{is_quasibijection, validate_operadic_functor, OperadicFunctor, UnaryOperadic2Cat};
use crate::report::ValidationReport;
use crate::simplicial::TruncatedSimplicialSet;
use crate::{Error, Result};

pub type LiftKey = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFibration {
    pub functor: OperadicFunctor,
    pub lift: BTreeMap<LiftKey, usize>,
}

impl SplitFibration {
    pub fn total(&self) -> &UnaryOperadic2Cat {
        &self.functor.source
    }

    pub fn base(&self) -> &UnaryOperadic2Cat {
        &self.functor.target
    }

    /// The projection with its canonical lifts `(g, p, 1)`.
    pub fn from_grothendieck(g: &crate::grothendieck::Grothendieck) -> Self {
        Self {
            functor: g.projection.clone(),
            lift: g.canonical_lifts(),
        }
    }

    /// The identity on `o`, lifting every 1-cell to itself.
    pub fn identity(o: &UnaryOperadic2Cat) -> Result<Self> {
        let functor = OperadicFunctor::identity(o)?;
        let x = &functor.map.source;
        let lift = (0..x.size(2))
            .map(|g| ((x.face(2, 0, g), x.face(2, 2, g), g), g))
            .collect();
        Ok(Self { functor, lift })
    }
}

/// A horn `(d0, d1, d3)` with a base filler that has no unique lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCartesian {
    pub horn: [usize; 3],
    pub base_filler: usize,
    pub lifts: usize,
}

/// Horn and filler indexes for one functor.
pub struct Cartesian<'a> {
    x: &'a TruncatedSimplicialSet,
    p: &'a OperadicFunctor,
    by_d0: HashMap<usize, Vec<usize>>,
    by_d0_d1: HashMap<(usize, usize), Vec<usize>>,
    total_fillers: HashMap<[usize; 3], Vec<usize>>,
    base_fillers: HashMap<[usize; 3], Vec<usize>>,
}

fn horn_faces(s: &TruncatedSimplicialSet, t: usize) -> [usize; 3] {
    [s.face(3, 0, t), s.face(3, 1, t), s.face(3, 3, t)]
}

impl<'a> Cartesian<'a> {
    pub fn new(p: &'a OperadicFunctor) -> Self {
        let x = &p.map.source;
        let y = &p.map.target;
        let mut by_d0: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut by_d0_d1: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for e in 0..x.size(2) {
            by_d0.entry(x.face(2, 0, e)).or_default().push(e);
            by_d0_d1.entry((x.face(2, 0, e), x.face(2, 1, e))).or_default().push(e);
        }
        let mut total_fillers: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
        for t in 0..x.size(3) {
            total_fillers.entry(horn_faces(x, t)).or_default().push(t);
        }
        let mut base_fillers: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
        for t in 0..y.size(3) {
            base_fillers.entry(horn_faces(y, t)).or_default().push(t);
        }
        Self {
            x,
            p,
            by_d0,
            by_d0_d1,
            total_fillers,
            base_fillers,
        }
    }

    /// The first horn at `f` whose base filler has zero or several lifts.
    pub fn witness(&self, f: usize) -> Result<Option<NonCartesian>> {
        let x = self.x;
        if f >= x.size(2) {
            return Err(Error::Precondition(format!("{f} is not a 1-cell of the total")));
        }
        let pm = &self.p.map;
        let none = Vec::new();
        for &x1 in self.by_d0.get(&x.face(2, 0, f)).unwrap_or(&none) {
            let key = (x.face(2, 2, f), x.face(2, 2, x1));
            for &x3 in self.by_d0_d1.get(&key).unwrap_or(&none) {
                let horn = [f, x1, x3];
                let image = horn.map(|e| pm.apply(2, e));
                let lifts = self.total_fillers.get(&horn).unwrap_or(&none);
                for &sigma in self.base_fillers.get(&image).unwrap_or(&none) {
                    let count = lifts.iter().filter(|&&t| pm.apply(3, t) == sigma).count();
                    if count != 1 {
                        return Ok(Some(NonCartesian {
                            horn,
                            base_filler: sigma,
                            lifts: count,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_cartesian(&self, f: usize) -> Result<bool> {
        Ok(self.witness(f)?.is_none())
    }
}

pub fn is_p_cartesian(p: &OperadicFunctor, f: usize) -> Result<bool> {
    Cartesian::new(p).is_cartesian(f)
}

/// Every key a splitting of `p` must cover, in lexicographic order.
fn required_keys(p: &OperadicFunctor) -> Vec<LiftKey> {
    let x = &p.map.source;
    let y = &p.map.target;
    let mut over: HashMap<usize, Vec<usize>> = HashMap::new();
    for a in 0..x.size(1) {
        over.entry(p.map.apply(1, a)).or_default().push(a);
    }
    let none = Vec::new();
    let mut keys = Vec::new();
    for g in 0..y.size(2) {
        for &a in over.get(&y.face(2, 0, g)).unwrap_or(&none) {
            for &b in over.get(&y.face(2, 2, g)).unwrap_or(&none) {
                keys.push((a, b, g));
            }
        }
    }
    keys.sort();
    keys
}

fn lift_fits(p: &OperadicFunctor, (a, b, g): LiftKey, l: usize) -> bool {
    let x = &p.map.source;
    l < x.size(2) && x.face(2, 0, l) == a && x.face(2, 2, l) == b && p.map.apply(2, l) == g
}

/// The two unit conditions, as `(key, forced value)` pairs.
fn unit_requirements(p: &OperadicFunctor) -> Vec<(LiftKey, usize)> {
    let x = &p.map.source;
    let y = &p.map.target;
    let mut out = Vec::new();
    for obj in 0..x.size(1) {
        let px = p.map.apply(1, obj);
        let u_pi = x.degen(0, 0, x.face(1, 0, obj));
        out.push(((u_pi, obj, y.degen(1, 1, px)), x.degen(1, 1, obj)));
        let u_phi = x.degen(0, 0, x.face(1, 1, obj));
        out.push(((obj, u_phi, y.degen(1, 0, px)), x.degen(1, 0, obj)));
    }
    out
}

/// One cocycle instance: a base 3-simplex and total objects over its spine.
struct Cocycle {
    sigma: usize,
    faces: [usize; 4],
    x: usize,
    y: usize,
    z: usize,
}

fn cocycles(p: &OperadicFunctor) -> Vec<Cocycle> {
    let x = &p.map.source;
    let y = &p.map.target;
    let mut over: HashMap<usize, Vec<usize>> = HashMap::new();
    for a in 0..x.size(1) {
        over.entry(p.map.apply(1, a)).or_default().push(a);
    }
    let none = Vec::new();
    let mut out = Vec::new();
    for sigma in 0..y.size(3) {
        let faces = [0, 1, 2, 3].map(|i| y.face(3, i, sigma));
        let (a123, a012) = (faces[0], faces[3]);
        let (f01, f12, f23) = (y.face(2, 2, a012), y.face(2, 2, a123), y.face(2, 0, a123));
        for &xx in over.get(&f01).unwrap_or(&none) {
            for &yy in over.get(&f12).unwrap_or(&none) {
                for &zz in over.get(&f23).unwrap_or(&none) {
                    out.push(Cocycle {
                        sigma,
                        faces,
                        x: xx,
                        y: yy,
                        z: zz,
                    });
                }
            }
        }
    }
    out
}

/// The 3-cells of the total by their four faces.
fn by_faces(x: &TruncatedSimplicialSet) -> HashMap<[usize; 4], Vec<usize>> {
    let mut out: HashMap<[usize; 4], Vec<usize>> = HashMap::new();
    for t in 0..x.size(3) {
        out.entry([0, 1, 2, 3].map(|i| x.face(3, i, t))).or_default().push(t);
    }
    out
}

/// The chosen lifts of the four faces of `σ` must be the faces of one lift
/// of `σ`. Gives `None` while a lift it needs is still unchosen.
fn cocycle_holds(
    p: &OperadicFunctor,
    faces_index: &HashMap<[usize; 4], Vec<usize>>,
    lift: &BTreeMap<LiftKey, usize>,
    c: &Cocycle,
) -> Option<bool> {
    let x = &p.map.source;
    let [a123, a023, a013, a012] = c.faces;
    let l0 = *lift.get(&(c.z, c.y, a123))?;
    let l3 = *lift.get(&(c.y, c.x, a012))?;
    let l1 = *lift.get(&(c.z, x.face(2, 1, l3), a023))?;
    let l2 = *lift.get(&(x.face(2, 1, l0), c.x, a013))?;
    let found = faces_index
        .get(&[l0, l1, l2, l3])
        .is_some_and(|ts| ts.iter().any(|&t| p.map.apply(3, t) == c.sigma));
    Some(found)
}

/// Every violated clause of the definition of a split fibration.
pub fn check_split_fibration(f: &SplitFibration) -> ValidationReport {
    let mut r = ValidationReport::new();
    let p = &f.functor;
    let functor_report = validate_operadic_functor(p);
    if !functor_report.is_valid() {
        r.extend(functor_report);
        return r;
    }
    let cart = Cartesian::new(p);
    let required = required_keys(p);
    for key in &required {
        match f.lift.get(key) {
            None => r.push("lift missing", format!("{key:?}")),
            Some(&l) if !lift_fits(p, *key, l) => r.push("lift incorrect", format!("{key:?} ↦ {l}")),
            Some(&l) => match cart.witness(l) {
                Ok(None) => {}
                Ok(Some(w)) => r.push(
                    "non-cartesian",
                    format!("{key:?} ↦ {l}: horn {:?} over base filler {} has {} lifts", w.horn, w.base_filler, w.lifts),
                ),
                Err(e) => r.push("lift incorrect", e.to_string()),
            },
        }
    }
    if f.lift.len() > required.len() {
        for key in f.lift.keys().filter(|k| required.binary_search(k).is_err()) {
            r.push("lift incorrect", format!("{key:?} is not a lift key"));
        }
    }
    for (key, want) in unit_requirements(p) {
        if let Some(&got) = f.lift.get(&key) {
            if got != want {
                r.push("unit", format!("{key:?} ↦ {got}, expected {want}"));
            }
        }
    }
    let faces_index = by_faces(&p.map.source);
    for c in cocycles(p) {
        if cocycle_holds(p, &faces_index, &f.lift, &c) == Some(false) {
            r.push(
                "cocycle",
                format!("base 3-simplex {}, x={}, y={}, z={}", c.sigma, c.x, c.y, c.z),
            );
        }
    }
    if let Some(k) = uncovered_component(p) {
        r.push("π0", format!("base component {k} has nothing above it"));
    }
    r
}

fn uncovered_component(p: &OperadicFunctor) -> Option<usize> {
    let hit = &p.map.level_map[0];
    (0..p.map.target.size(0)).find(|k| !hit.contains(k))
}

/// `p` is bijective on components.
pub fn pi0_iso_check(f: &SplitFibration) -> bool {
    let hit = &f.functor.map.level_map[0];
    let mut seen = vec![false; f.functor.map.target.size(0)];
    for &k in hit {
        if std::mem::replace(&mut seen[k], true) {
            return false;
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingFailure {
    #[error("no cartesian lift for (a={}, b={}, g={})", .0.0, .0.1, .0.2)]
    Unliftable(LiftKey),
    #[error("unit condition forces {value} at {key:?}, which is not a cartesian lift")]
    UnitClash { key: LiftKey, value: usize },
    #[error("base component {0} has nothing above it")]
    Components(usize),
    #[error("no choice of cartesian lifts satisfies the cocycle condition")]
    NoCoherentChoice,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug)]
pub struct Splitting {
    pub fibration: SplitFibration,
    /// Keys that admitted more than one cartesian lift, with the count.
    pub multiplicity: BTreeMap<LiftKey, usize>,
}

/// Deterministic search for a splitting: keys in lexicographic order,
/// candidates in index order, unit keys forced, backtracking on the
/// cocycle condition.
pub fn find_splitting(p: &OperadicFunctor) -> std::result::Result<Splitting, SplittingFailure> {
    let report = validate_operadic_functor(p);
    if !report.is_valid() {
        return Err(SplittingFailure::Invalid(report.to_string()));
    }
    if let Some(k) = uncovered_component(p) {
        return Err(SplittingFailure::Components(k));
    }
    let x = &p.map.source;
    let cart = Cartesian::new(p);
    let forced: HashMap<LiftKey, usize> = unit_requirements(p).into_iter().collect();
    let mut by_key: HashMap<LiftKey, Vec<usize>> = HashMap::new();
    for l in 0..x.size(2) {
        let key = (x.face(2, 0, l), x.face(2, 2, l), p.map.apply(2, l));
        if cart.is_cartesian(l).unwrap_or(false) {
            by_key.entry(key).or_default().push(l);
        }
    }
    let keys = required_keys(p);
    let mut candidates = Vec::with_capacity(keys.len());
    let mut multiplicity = BTreeMap::new();
    for key in &keys {
        let mut c = by_key.remove(key).unwrap_or_default();
        if c.is_empty() {
            return Err(SplittingFailure::Unliftable(*key));
        }
        if c.len() > 1 {
            multiplicity.insert(*key, c.len());
        }
        if let Some(&v) = forced.get(key) {
            if !c.contains(&v) {
                return Err(SplittingFailure::UnitClash { key: *key, value: v });
            }
            c = vec![v];
        }
        candidates.push(c);
    }
    let instances = cocycles(p);
    let faces_index = by_faces(x);
    let ctx = Search {
        p,
        faces_index: &faces_index,
        keys: &keys,
        candidates: &candidates,
        instances: &instances,
    };
    let mut lift = BTreeMap::new();
    if ctx.run(0, &mut lift) {
        Ok(Splitting {
            fibration: SplitFibration {
                functor: p.clone(),
                lift,
            },
            multiplicity,
        })
    } else {
        Err(SplittingFailure::NoCoherentChoice)
    }
}

struct Search<'a> {
    p: &'a OperadicFunctor,
    faces_index: &'a HashMap<[usize; 4], Vec<usize>>,
    keys: &'a [LiftKey],
    candidates: &'a [Vec<usize>],
    instances: &'a [Cocycle],
}

impl Search<'_> {
    fn holds(&self, lift: &BTreeMap<LiftKey, usize>, c: &Cocycle) -> Option<bool> {
        cocycle_holds(self.p, self.faces_index, lift, c)
    }

    fn run(&self, i: usize, lift: &mut BTreeMap<LiftKey, usize>) -> bool {
        if i == self.keys.len() {
            return self.instances.iter().all(|c| self.holds(lift, c) == Some(true));
        }
        let branching = self.candidates[i].len() > 1;
        for &l in &self.candidates[i] {
            lift.insert(self.keys[i], l);
            // pruning only pays off where there is a choice to undo
            let consistent =
                !branching || self.instances.iter().all(|c| self.holds(lift, c) != Some(false));
            if consistent && self.run(i + 1, lift) {
                return true;
            }
        }
        lift.remove(&self.keys[i]);
        false
    }
}

/// The extracted operad together with where its cells live in the total.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub operad: CategoricalOperad,
    /// `objects[x][i]` is the total object behind fiber object `i` over `x`.
    pub objects: Vec<Vec<usize>>,
    /// `morphisms[x][i]` is the total 1-cell behind fiber morphism `i`.
    pub morphisms: Vec<Vec<usize>>,
}

/// Trivial total objects above the trivial base object of component `c`.
pub fn trivial_objects_above(f: &SplitFibration, c: usize) -> Vec<usize> {
    let x = &f.functor.map.source;
    let y = &f.functor.map.target;
    let v = y.degen(0, 0, c);
    (0..x.size(1))
        .filter(|&o| f.functor.map.apply(1, o) == v && x.degen(0, 0, x.face(1, 0, o)) == o)
        .collect()
}

pub fn extract_operad(f: &SplitFibration) -> Result<CategoricalOperad> {
    Ok(extract(f)?.operad)
}

pub fn extract(f: &SplitFibration) -> Result<Extraction> {
    check_split_fibration(f).into_result("split fibration")?;
    let p = &f.functor.map;
    let (x, y) = (&p.source, &p.target);
    let total = f.total();
    let tc = total.cat();
    let base = f.base();
    let n = y.size(1);

    let mut objects = vec![Vec::new(); n];
    let mut local_obj = vec![0; x.size(1)];
    for (o, local) in local_obj.iter_mut().enumerate() {
        let b = p.apply(1, o);
        *local = objects[b].len();
        objects[b].push(o);
    }
    let mut morphisms = vec![Vec::new(); n];
    let mut local_mor = HashMap::new();
    for (b, list) in morphisms.iter_mut().enumerate() {
        let one = y.degen(1, 0, b);
        let mut cells: Vec<usize> = (0..x.size(2))
            .filter(|&t| p.apply(2, t) == one && is_quasibijection(total, t))
            .collect();
        cells.sort_by_key(|&t| (local_obj[tc.tgt1(t)], local_obj[tc.src1(t)], t));
        for (i, &t) in cells.iter().enumerate() {
            local_mor.insert(t, i);
        }
        *list = cells;
    }
    let mor = |t: usize| -> Result<usize> {
        local_mor
            .get(&t)
            .copied()
            .ok_or_else(|| Error::internal(format!("total 1-cell {t} is not a fiber morphism")))
    };
    let fibers = (0..n)
        .map(|b| {
            let cells = &morphisms[b];
            let mut compose = BTreeMap::new();
            for (i1, &c1) in cells.iter().enumerate() {
                for (i2, &c2) in cells.iter().enumerate() {
                    if tc.tgt1(c2) == tc.src1(c1) {
                        compose.insert((i2, i1), mor(tc.comp(c1, c2))?);
                    }
                }
            }
            Ok(FiniteCategory {
                objects: objects[b].len(),
                morphisms: cells.iter().map(|&t| (local_obj[tc.tgt1(t)], local_obj[tc.src1(t)])).collect(),
                compose,
                ids: objects[b].iter().map(|&o| mor(tc.id1(o))).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let cart = Cartesian::new(&f.functor);
    let lift = |a: usize, b: usize, g: usize| -> Result<usize> {
        f.lift
            .get(&(a, b, g))
            .copied()
            .ok_or_else(|| Error::internal(format!("lift ({a}, {b}, {g}) missing")))
    };
    let mult = (0..y.size(2))
        .map(|g| {
            let (left, right) = (y.face(2, 0, g), y.face(2, 2, g));
            let on_objects = objects[left]
                .iter()
                .map(|&a| {
                    objects[right]
                        .iter()
                        .map(|&b| Ok(local_obj[x.face(2, 1, lift(a, b, g)?)]))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let sigma = y.degen(2, 0, g);
            let on_morphisms = morphisms[left]
                .iter()
                .map(|&ta| {
                    morphisms[right]
                        .iter()
                        .map(|&tb| {
                            // ta : a1 → a0 and tb : b1 → b0 in the total
                            let (a0, a1) = (tc.tgt1(ta), tc.src1(ta));
                            let (b0, b1) = (tc.tgt1(tb), tc.src1(tb));
                            let horn = [lift(a0, b0, g)?, tc.comp(ta, lift(a1, b1, g)?), tb];
                            let fillers: Vec<usize> = cart
                                .total_fillers
                                .get(&horn)
                                .into_iter()
                                .flatten()
                                .copied()
                                .filter(|&t| p.apply(3, t) == sigma)
                                .collect();
                            match fillers.as_slice() {
                                [t] => mor(x.face(3, 2, *t)),
                                _ => Err(Error::internal(format!(
                                    "horn {horn:?} has {} fillers over {sigma}",
                                    fillers.len()
                                ))),
                            }
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Bifunctor {
                on_objects,
                on_morphisms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let units = (0..base.components())
        .map(|c| match trivial_objects_above(f, c).as_slice() {
            [o] => Ok(local_obj[*o]),
            other => Err(Error::Certification(format!(
                "{} trivial objects above the trivial object of component {c}",
                other.len()
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    let operad = CategoricalOperad {
        base: base.clone(),
        fibers,
        mult,
        units,
    };
    let report = validate_operad(&operad);
    if !report.is_valid() {
        return Err(Error::internal(format!("extracted operad is invalid: {report}")));
    }
    Ok(Extraction {
        operad,
        objects,
        morphisms,
    })
}

/// Extraction after the Grothendieck construction gives back `P` with its
/// fiber morphisms in canonical order.
pub fn roundtrip_operad(o: &UnaryOperadic2Cat, p: &CategoricalOperad) -> Result<IsoCertificate> {
    if &p.base != o {
        return Err(Error::MismatchedTargets("operad does not live over this base".into()));
    }
    let g = grothendieck(o, p)?;
    let q = extract_operad(&SplitFibration::from_grothendieck(&g))?;
    let want = p.canonical();
    let mut cells = 0;
    for (x, (got, exp)) in q.fibers.iter().zip(&want.fibers).enumerate() {
        if got != exp {
            return Err(Error::Certification(format!("fiber over object {x} differs")));
        }
        cells += got.objects + got.morphisms.len();
    }
    for (f, (got, exp)) in q.mult.iter().zip(&want.mult).enumerate() {
        if let Some(cell) = first_difference(&got.on_objects, &exp.on_objects) {
            return Err(Error::Certification(format!("object product over 1-cell {f} at {cell:?}")));
        }
        if let Some(cell) = first_difference(&got.on_morphisms, &exp.on_morphisms) {
            return Err(Error::Certification(format!("morphism product over 1-cell {f} at {cell:?}")));
        }
        cells += got.on_objects.iter().map(Vec::len).sum::<usize>();
        cells += got.on_morphisms.iter().map(Vec::len).sum::<usize>();
    }
    if q.units != want.units {
        return Err(Error::Certification("units differ".into()));
    }
    Ok(IsoCertificate {
        what: "extract ∘ ∫ = id".into(),
        cells: cells + q.units.len(),
        iso: None,
    })
}

fn first_difference(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<(usize, usize)> {
    if a.len() != b.len() {
        return Some((a.len().min(b.len()), 0));
    }
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        if ra.len() != rb.len() {
            return Some((i, ra.len().min(rb.len())));
        }
        if let Some(j) = ra.iter().zip(rb).position(|(u, v)| u != v) {
            return Some((i, j));
        }
    }
    None
}

/// The comparison `∫(extract F) → total of F` over the base, certified
/// cellwise and checked against both projections and both lift tables.
pub fn roundtrip_fibration(f: &SplitFibration) -> Result<IsoCertificate> {
    let ext = extract(f)?;
    let g = grothendieck(f.base(), &ext.operad)?;
    let total = f.total();
    let tc = total.cat();
    let pf = &f.functor.map;
    let lift = |k: LiftKey| -> Result<usize> {
        f.lift
            .get(&k)
            .copied()
            .ok_or_else(|| Error::Certification(format!("lift {k:?} missing")))
    };
    let obj_map: Vec<usize> = g.objects.iter().map(|&(a, x)| ext.objects[a][x]).collect();
    let psi1 = &g.base.maps().phi1;
    let arrow_map = g
        .arrows
        .iter()
        .map(|a| {
            let (big_a, _) = g.objects[a.src];
            let via = ext.morphisms[big_a][a.alpha];
            let l = lift((obj_map[a.tgt], ext.objects[psi1[a.f]][a.p], a.f))?;
            Ok(tc.comp(l, via))
        })
        .collect::<Result<Vec<_>>>()?;

    // a triangle is pinned down by its faces together with its projection
    let x = &pf.source;
    let gx = &g.projection.map.source;
    let mut by_faces: HashMap<([usize; 4], usize), Vec<usize>> = HashMap::new();
    for t in 0..x.size(3) {
        let faces = [0, 1, 2, 3].map(|i| x.face(3, i, t));
        by_faces.entry((faces, pf.apply(3, t))).or_default().push(t);
    }
    let tri_map = (0..gx.size(3))
        .map(|t| {
            let faces = [0, 1, 2, 3].map(|i| arrow_map[gx.face(3, i, t)]);
            match by_faces.get(&(faces, g.projection.map.apply(3, t))).map(Vec::as_slice) {
                Some([image]) => Ok(*image),
                _ => Err(Error::Certification(format!("triangle {t} has no unique image"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = certify_cell_map(&g.total, total, obj_map, arrow_map, tri_map)?;
    let m = iso.map();
    for level in 0..m.level_map.len() {
        for c in 0..m.level_map[level].len() {
            if pf.apply(level, m.apply(level, c)) != g.projection.map.apply(level, c) {
                return Err(Error::Certification(format!("projections differ at level {level}, cell {c}")));
            }
        }
    }
    for (&(a, b, base), &l) in &g.canonical_lifts() {
        let want = lift((m.apply(1, a), m.apply(1, b), base))?;
        if m.apply(2, l) != want {
            return Err(Error::Certification(format!("lift ({a}, {b}, {base}) differs")));
        }
    }
    Ok(IsoCertificate {
        what: "∫ ∘ extract ≅ id".into(),
        cells: m.level_map.iter().map(Vec::len).sum(),
        iso: Some(iso),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::operadic::terminal_odot;

    fn canonical(name: &str) -> SplitFibration {
        let p = fixtures::operad(name).unwrap();
        SplitFibration::from_grothendieck(&grothendieck(&p.base, &p).unwrap())
    }

    fn to_odot(o: &UnaryOperadic2Cat) -> OperadicFunctor {
        let levels = o.sizes().iter().map(|&n| vec![0; n]).collect();
        OperadicFunctor::new(o, &terminal_odot(), levels).unwrap()
    }

    #[test]
    fn canonical_lifts_split_every_projection() {
        for name in fixtures::OPERADS {
            let f = canonical(name);
            let r = check_split_fibration(&f);
            assert!(r.is_valid(), "{name}: {r}");
            assert!(pi0_iso_check(&f), "{name}");
        }
    }

    #[test]
    fn identity_is_split() {
        for name in fixtures::OPERADIC {
            let f = SplitFibration::identity(&fixtures::operadic(name).unwrap()).unwrap();
            let r = check_split_fibration(&f);
            assert!(r.is_valid(), "{name}: {r}");
            let found = find_splitting(&f.functor).unwrap();
            assert_eq!(found.fibration.lift, f.lift, "{name}");
        }
    }

    #[test]
    fn search_recovers_canonical_lifts() {
        for name in fixtures::OPERADS {
            let f = canonical(name);
            let found = find_splitting(&f.functor).unwrap();
            assert_eq!(found.fibration.lift, f.lift, "{name}");
        }
    }

    #[test]
    fn bouquets_over_odot_do_not_split() {
        let p = to_odot(&fixtures::operadic("bq2").unwrap());
        let err = find_splitting(&p).unwrap_err();
        assert!(matches!(err, SplittingFailure::Unliftable(_)), "{err}");
    }

    #[test]
    fn round_trips_on_fixtures() {
        for name in fixtures::OPERADS {
            let p = fixtures::operad(name).unwrap();
            roundtrip_operad(&p.base, &p).unwrap();
            roundtrip_fibration(&canonical(name)).unwrap();
        }
    }

    #[test]
    fn extraction_of_terminal_is_terminal() {
        let q = extract_operad(&canonical("terminal-odot")).unwrap();
        assert_eq!(q, CategoricalOperad::terminal(&terminal_odot()));
    }

    #[test]
    fn automorphisms_give_extra_cartesian_lifts() {
        let found = find_splitting(&canonical("endo-z2-odot").functor).unwrap();
        assert!(!found.multiplicity.is_empty());
        assert!(found.multiplicity.values().all(|&n| n == 2));
    }

    #[test]
    fn mutated_lift_breaks_the_cocycle() {
        let f = canonical("z3-twisted-odot");
        let x = &f.functor.map.source;
        let forced: HashMap<LiftKey, usize> = unit_requirements(&f.functor).into_iter().collect();
        let cart = Cartesian::new(&f.functor);
        let (key, other) = f
            .lift
            .iter()
            .filter(|(k, _)| !forced.contains_key(k))
            .find_map(|(&k, &l)| {
                (0..x.size(2))
                    .find(|&m| m != l && lift_fits(&f.functor, k, m) && cart.is_cartesian(m).unwrap())
                    .map(|m| (k, m))
            })
            .expect("a key with a second cartesian lift");
        let mut g = f.clone();
        g.lift.insert(key, other);
        let r = check_split_fibration(&g);
        assert!(r.mentions("cocycle"), "{r}");
        assert!(r.mentions("base 3-simplex"), "{r}");
        assert!(!r.mentions("lift incorrect") && !r.mentions("non-cartesian"), "{r}");
    }

    #[test]
    fn non_fibration_has_a_witness() {
        let o = fixtures::operadic("slice-two-cell").unwrap();
        let p = to_odot(&o);
        let cart = Cartesian::new(&p);
        let witnesses: Vec<_> = (0..p.map.source.size(2)).filter_map(|f| cart.witness(f).unwrap()).collect();
        assert!(!witnesses.is_empty());
        let x = &p.map.source;
        for w in witnesses {
            let exact = (0..x.size(3))
                .filter(|&t| horn_faces(x, t) == w.horn && p.map.apply(3, t) == w.base_filler)
                .count();
            assert_eq!(exact, w.lifts);
            assert_ne!(w.lifts, 1);
        }
        assert!(is_p_cartesian(&p, 99_999).is_err());
    }

    #[test]
    fn quasibijections_of_totals() {
        for name in fixtures::OPERADS {
            let p = fixtures::operad(name).unwrap();
            let g = grothendieck(&p.base, &p).unwrap();
            for (i, a) in g.arrows.iter().enumerate() {
                let unit = p.units[g.base.maps().phi0[g.objects[a.tgt].0]];
                let expected = is_quasibijection(&p.base, a.f) && a.p == unit;
                assert_eq!(is_quasibijection(&g.total, i), expected, "{name}: 1-cell {i}");
            }
        }
    }

    #[test]
    fn extraction_over_odot_is_the_monoidal_category() {
        for m in [crate::twocat::StrictMonCat::cyclic(2), fixtures::endo_z2()] {
            let p = crate::operad::operad_from_moncat(&m).unwrap();
            let q = extract_operad(&SplitFibration::from_grothendieck(&grothendieck(&p.base, &p).unwrap())).unwrap();
            assert_eq!(q, p.canonical());
        }
    }
}
