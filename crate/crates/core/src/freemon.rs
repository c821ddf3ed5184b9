//! Free strict monoidal categories on finite presentations, adjoint to the
//! truncated nerve Ψ.
//!
//! Generators are typed from a list of letters to at most one letter. Each
//! relation equates a 3-cell generator with its two two-stage expansions.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::nerve::{duskin_nerve, duskin_nerve_labelled, nerve_map, Nerve};
use crate::report::ValidationReport;
use crate::simplicial::{enumerate_maps, validate_simplicial, SSetMap, TruncatedSimplicialSet};
use crate::twocat::{deloop, validate_moncat, Functor2, StrictMonCat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct Generator {
    pub name: String,
    pub inputs: Vec<usize>,
    /// `None` when the output is the monoidal unit.
    pub output: Option<usize>,
    /// Vertices of the simplex behind the generator, when there is one.
    #[serde(default)]
    pub vertices: Vec<usize>,
}

/// Morphism expressions over a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Id(Vec<usize>),
    Gen(usize),
    Tensor(Vec<Expr>),
    /// `later ∘ earlier`
    Comp(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn comp(later: Expr, earlier: Expr) -> Expr {
        Expr::Comp(Box::new(later), Box::new(earlier))
    }
}

/// `generator = left = right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct Relation {
    pub generator: usize,
    pub left: Expr,
    pub right: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct MonPresentation {
    pub letters: Vec<String>,
    /// `(source vertex, target vertex)` per letter, when known.
    #[serde(default)]
    pub boundaries: Vec<(usize, usize)>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    /// Closure bound for the word problem; `None` picks a default per query.
    #[serde(default)]
    pub bound: Option<usize>,
}

impl MonPresentation {
    /// `(domain, codomain)` as letter lists.
    pub fn type_of(&self, e: &Expr) -> Result<(Vec<usize>, Vec<usize>)> {
        match e {
            Expr::Id(ls) => {
                if let Some(&l) = ls.iter().find(|&&l| l >= self.letters.len()) {
                    return Err(Error::malformed(format!("letter {l} out of range")));
                }
                Ok((ls.clone(), ls.clone()))
            }
            Expr::Gen(g) => {
                let g = self
                    .generators
                    .get(*g)
                    .ok_or_else(|| Error::malformed(format!("generator {g} out of range")))?;
                Ok((g.inputs.clone(), g.output.into_iter().collect()))
            }
            Expr::Tensor(parts) => {
                let mut dom = Vec::new();
                let mut cod = Vec::new();
                for p in parts {
                    let (d, c) = self.type_of(p)?;
                    dom.extend(d);
                    cod.extend(c);
                }
                Ok((dom, cod))
            }
            Expr::Comp(later, earlier) => {
                let (d1, c1) = self.type_of(earlier)?;
                let (d2, c2) = self.type_of(later)?;
                if c1 != d2 {
                    return Err(Error::malformed(format!("cannot compose: {c1:?} then {d2:?}")));
                }
                Ok((d1, c2))
            }
        }
    }

    /// Letters named `f{ij}` and generators `α{ijk}` / `σ{ijkl}` after their
    /// vertices, then everything sorted by name.
    pub fn normalized(&self) -> MonPresentation {
        let digits = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<String>();
        let letter_names: Vec<String> = self
            .letters
            .iter()
            .enumerate()
            .map(|(i, n)| match self.boundaries.get(i) {
                Some(&(s, t)) => format!("f{s}{t}"),
                None => n.clone(),
            })
            .collect();
        let gen_names: Vec<String> = self
            .generators
            .iter()
            .map(|g| match g.vertices.len() {
                3 => format!("α{}", digits(&g.vertices)),
                4 => format!("σ{}", digits(&g.vertices)),
                _ => g.name.clone(),
            })
            .collect();
        let mut lorder: Vec<usize> = (0..self.letters.len()).collect();
        lorder.sort_by(|&a, &b| letter_names[a].cmp(&letter_names[b]));
        let mut lnew = vec![0; lorder.len()];
        for (new, &old) in lorder.iter().enumerate() {
            lnew[old] = new;
        }
        let mut gorder: Vec<usize> = (0..self.generators.len()).collect();
        gorder.sort_by(|&a, &b| gen_names[a].cmp(&gen_names[b]));
        let mut gnew = vec![0; gorder.len()];
        for (new, &old) in gorder.iter().enumerate() {
            gnew[old] = new;
        }
        let ren = |e: &Expr| rename(e, &lnew, &gnew);
        let mut relations: Vec<Relation> = self
            .relations
            .iter()
            .map(|r| Relation {
                generator: gnew[r.generator],
                left: ren(&r.left),
                right: ren(&r.right),
            })
            .collect();
        relations.sort_by_key(|r| r.generator);
        MonPresentation {
            letters: lorder.iter().map(|&i| letter_names[i].clone()).collect(),
            boundaries: lorder.iter().filter_map(|&i| self.boundaries.get(i).copied()).collect(),
            generators: gorder
                .iter()
                .map(|&i| {
                    let g = &self.generators[i];
                    Generator {
                        name: gen_names[i].clone(),
                        inputs: g.inputs.iter().map(|&l| lnew[l]).collect(),
                        output: g.output.map(|l| lnew[l]),
                        vertices: g.vertices.clone(),
                    }
                })
                .collect(),
            relations,
            bound: self.bound,
        }
    }
}

fn rename(e: &Expr, letters: &[usize], gens: &[usize]) -> Expr {
    match e {
        Expr::Id(ls) => Expr::Id(ls.iter().map(|&l| letters[l]).collect()),
        Expr::Gen(g) => Expr::Gen(gens[*g]),
        Expr::Tensor(ps) => Expr::Tensor(ps.iter().map(|p| rename(p, letters, gens)).collect()),
        Expr::Comp(a, b) => Expr::comp(rename(a, letters, gens), rename(b, letters, gens)),
    }
}

/// Typing of generators and of both sides of every relation.
pub fn validate_presentation(p: &MonPresentation) -> ValidationReport {
    let mut r = ValidationReport::new();
    if !p.boundaries.is_empty() && p.boundaries.len() != p.letters.len() {
        r.push("boundaries", "one boundary per letter or none");
    }
    for (i, g) in p.generators.iter().enumerate() {
        if g.inputs.iter().chain(g.output.iter()).any(|&l| l >= p.letters.len()) {
            r.push("generator typing", format!("{} ({i}) uses an unknown letter", g.name));
        }
    }
    if !r.is_valid() {
        return r;
    }
    for (i, rel) in p.relations.iter().enumerate() {
        let want = p.type_of(&Expr::Gen(rel.generator));
        for (side, e) in [("left", &rel.left), ("right", &rel.right)] {
            match (p.type_of(e), &want) {
                (Ok(t), Ok(w)) if &t == w => {}
                (Ok(t), Ok(w)) => r.push("relation typing", format!("relation {i} {side}: {t:?} vs {w:?}")),
                (Err(e), _) => r.push("relation typing", format!("relation {i} {side}: {e}")),
                (_, Err(e)) => r.push("relation typing", format!("relation {i} generator: {e}")),
            }
        }
    }
    r
}

/// The presentation of `Φ0[k]`: letters `f_ij`, generators `α_ijk` and, for
/// `k = 3`, `σ0123` with its relation.
pub fn phi0(k: usize) -> Result<MonPresentation> {
    if k > 3 {
        return Err(Error::Precondition(format!("Φ0[{k}] is only defined for k ≤ 3")));
    }
    let pairs: Vec<(usize, usize)> = (0..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))).collect();
    let letter = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("edge");
    let triples: Vec<[usize; 3]> = (0..=k)
        .flat_map(|i| (i + 1..=k).flat_map(move |j| (j + 1..=k).map(move |l| [i, j, l])))
        .collect();
    let mut generators: Vec<Generator> = triples
        .iter()
        .map(|&[i, j, l]| Generator {
            name: format!("α{i}{j}{l}"),
            inputs: vec![letter(j, l), letter(i, j)],
            output: Some(letter(i, l)),
            vertices: vec![i, j, l],
        })
        .collect();
    let mut relations = Vec::new();
    if k == 3 {
        let alpha = |t: [usize; 3]| Expr::Gen(triples.iter().position(|&x| x == t).expect("face"));
        generators.push(Generator {
            name: "σ0123".into(),
            inputs: vec![letter(2, 3), letter(1, 2), letter(0, 1)],
            output: Some(letter(0, 3)),
            vertices: vec![0, 1, 2, 3],
        });
        relations.push(Relation {
            generator: generators.len() - 1,
            left: Expr::comp(alpha([0, 1, 3]), Expr::Tensor(vec![alpha([1, 2, 3]), Expr::Id(vec![letter(0, 1)])])),
            right: Expr::comp(alpha([0, 2, 3]), Expr::Tensor(vec![Expr::Id(vec![letter(2, 3)]), alpha([0, 1, 2])])),
        });
    }
    Ok(MonPresentation {
        letters: pairs.iter().map(|(i, j)| format!("f{i}{j}")).collect(),
        boundaries: pairs.clone(),
        generators,
        relations,
        bound: None,
    })
}

/// Where each simplex of `X` (levels 1..3) lands in `Φtr3 X`.
struct Collapse<'a> {
    x: &'a TruncatedSimplicialSet,
    letter: HashMap<usize, usize>,
    triangle: HashMap<usize, usize>,
}

impl Collapse<'_> {
    /// Degenerate edges go to the empty list.
    fn letters(&self, e: usize) -> Vec<usize> {
        self.letter.get(&e).copied().into_iter().collect()
    }

    /// Degenerate 2-simplices go to identities.
    fn expr(&self, t: usize) -> Expr {
        match self.triangle.get(&t) {
            Some(&g) => Expr::Gen(g),
            None => Expr::Id(self.letters(self.x.face(2, 1, t))),
        }
    }

    /// `α013 ∘ (α123 ⊗ 1)` and `α023 ∘ (1 ⊗ α012)` for a 3-simplex.
    fn expansions(&self, s: usize) -> (Expr, Expr) {
        let x = self.x;
        let [a123, a023, a013, a012] = [0, 1, 2, 3].map(|i| x.face(3, i, s));
        let f01 = self.letters(x.face(2, 2, a012));
        let f23 = self.letters(x.face(2, 0, a123));
        let left = Expr::comp(self.expr(a013), Expr::Tensor(vec![self.expr(a123), Expr::Id(f01)]));
        let right = Expr::comp(self.expr(a023), Expr::Tensor(vec![Expr::Id(f23), self.expr(a012)]));
        (left, right)
    }
}

fn vertices(x: &TruncatedSimplicialSet, level: usize, c: usize) -> Vec<usize> {
    match level {
        0 => vec![c],
        _ => {
            // front face for all but the last vertex, then the last vertex
            let mut v = vertices(x, level - 1, x.face(level, level, c));
            let mut last = c;
            for l in (1..=level).rev() {
                last = x.face(l, 0, last);
            }
            v.push(last);
            v
        }
    }
}

/// `Φ tr3 X`: nondegenerate simplices become letters and generators,
/// degenerate ones collapse.
pub fn phi_tr3(x: &TruncatedSimplicialSet) -> Result<MonPresentation> {
    if x.max_level() < 3 {
        return Err(Error::Precondition("needs levels 0..3".into()));
    }
    validate_simplicial(x).into_result("simplicial set")?;
    let edges: Vec<usize> = (0..x.size(1)).filter(|&e| !x.is_degenerate(1, e)).collect();
    let tris: Vec<usize> = (0..x.size(2)).filter(|&t| !x.is_degenerate(2, t)).collect();
    let simps: Vec<usize> = (0..x.size(3)).filter(|&s| !x.is_degenerate(3, s)).collect();
    let col = Collapse {
        x,
        letter: edges.iter().enumerate().map(|(i, &e)| (e, i)).collect(),
        triangle: tris.iter().enumerate().map(|(i, &t)| (t, i)).collect(),
    };
    let mut generators: Vec<Generator> = tris
        .iter()
        .map(|&t| {
            let mut inputs = col.letters(x.face(2, 0, t));
            inputs.extend(col.letters(x.face(2, 2, t)));
            Generator {
                name: format!("t{t}"),
                inputs,
                output: col.letters(x.face(2, 1, t)).first().copied(),
                vertices: vertices(x, 2, t),
            }
        })
        .collect();
    let mut relations = Vec::new();
    for &s in &simps {
        let [a123, a012] = [x.face(3, 0, s), x.face(3, 3, s)];
        let mut inputs = col.letters(x.face(2, 0, a123));
        inputs.extend(col.letters(x.face(2, 2, a123)));
        inputs.extend(col.letters(x.face(2, 2, a012)));
        let a013 = x.face(3, 2, s);
        generators.push(Generator {
            name: format!("s{s}"),
            inputs,
            output: col.letters(x.face(2, 1, a013)).first().copied(),
            vertices: vertices(x, 3, s),
        });
        let (left, right) = col.expansions(s);
        relations.push(Relation {
            generator: generators.len() - 1,
            left,
            right,
        });
    }
    let p = MonPresentation {
        letters: edges.iter().map(|e| format!("e{e}")).collect(),
        boundaries: edges.iter().map(|&e| (x.face(1, 1, e), x.face(1, 0, e))).collect(),
        generators,
        relations,
        bound: None,
    };
    let report = validate_presentation(&p);
    if !report.is_valid() {
        return Err(Error::internal(format!("collapsed presentation is ill-typed: {report}")));
    }
    Ok(p)
}

/// `Ψ M`: the Duskin nerve of the delooping, levels 0..3.
pub fn psi(m: &StrictMonCat) -> Result<TruncatedSimplicialSet> {
    duskin_nerve(&deloop(m)?)
}

/// A strict monoidal functor out of a free category: letters to objects,
/// generators to morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, schemars::JsonSchema)]
pub struct Assignment {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

fn tensor_objects(m: &StrictMonCat, objects: &[usize], ls: &[usize]) -> usize {
    ls.iter().fold(m.unit, |acc, &l| m.tensor_obj[acc][objects[l]])
}

/// Value of `e` under `objects` and a (possibly partial) generator map.
fn eval(m: &StrictMonCat, objects: &[usize], gens: &[usize], e: &Expr) -> Option<usize> {
    let c = &m.category;
    match e {
        Expr::Id(ls) => Some(c.id(tensor_objects(m, objects, ls))),
        Expr::Gen(g) => gens.get(*g).copied(),
        Expr::Tensor(ps) => ps
            .iter()
            .try_fold(c.id(m.unit), |acc, p| Some(m.tensor_mor[acc][eval(m, objects, gens, p)?])),
        Expr::Comp(later, earlier) => {
            c.comp(eval(m, objects, gens, later)?, eval(m, objects, gens, earlier)?)
        }
    }
}

fn max_gen(e: &Expr) -> Option<usize> {
    match e {
        Expr::Id(_) => None,
        Expr::Gen(g) => Some(*g),
        Expr::Tensor(ps) => ps.iter().filter_map(max_gen).max(),
        Expr::Comp(a, b) => max_gen(a).max(max_gen(b)),
    }
}

/// Every strict monoidal functor `F P → M`, in lexicographic order of
/// `(objects, morphisms)`.
pub fn hom_moncat(p: &MonPresentation, m: &StrictMonCat) -> Result<Vec<Assignment>> {
    validate_presentation(p).into_result("presentation")?;
    validate_moncat(m).into_result("monoidal category")?;
    let n = m.category.objects;
    // relations become checkable once their last generator is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); p.generators.len()];
    for (i, r) in p.relations.iter().enumerate() {
        let last = [max_gen(&r.left), max_gen(&r.right), Some(r.generator)]
            .into_iter()
            .flatten()
            .max()
            .expect("relation names a generator");
        ready[last].push(i);
    }
    let mut out = Vec::new();
    let mut objects = vec![0; p.letters.len()];
    loop {
        let hom: Vec<Vec<usize>> = p
            .generators
            .iter()
            .map(|g| {
                let src = tensor_objects(m, &objects, &g.inputs);
                let tgt = tensor_objects(m, &objects, &g.output.into_iter().collect::<Vec<_>>());
                m.category.hom(src, tgt)
            })
            .collect();
        let mut gens = Vec::with_capacity(hom.len());
        assign(p, m, &objects, &hom, &ready, &mut gens, &mut out);
        if !next_tuple(&mut objects, n) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Advances an odometer with digits below `base`; false after the last tuple.
fn next_tuple(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn assign(
    p: &MonPresentation,
    m: &StrictMonCat,
    objects: &[usize],
    hom: &[Vec<usize>],
    ready: &[Vec<usize>],
    gens: &mut Vec<usize>,
    out: &mut Vec<Assignment>,
) {
    let k = gens.len();
    if k == hom.len() {
        out.push(Assignment {
            objects: objects.to_vec(),
            morphisms: gens.clone(),
        });
        return;
    }
    for &f in &hom[k] {
        gens.push(f);
        let ok = ready[k].iter().all(|&i| {
            let r = &p.relations[i];
            let g = Some(gens[r.generator]);
            eval(m, objects, gens, &r.left) == g && eval(m, objects, gens, &r.right) == g
        });
        if ok {
            assign(p, m, objects, hom, ready, gens, out);
        }
        gens.pop();
    }
}

/// Outcome of comparing `sSet(X, Ψ M)` with `MonCat(Φ tr3 X, M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct BijectionCertificate {
    pub maps: usize,
    pub functors: usize,
    /// `transpose[i]` is the functor index matched with map `i`.
    pub transpose: Vec<usize>,
}

/// Nondegenerate cells of `X` in the order `phi_tr3` uses them.
struct Cells {
    edges: Vec<usize>,
    tris: Vec<usize>,
}

impl Cells {
    fn of(x: &TruncatedSimplicialSet) -> Self {
        Cells {
            edges: (0..x.size(1)).filter(|&e| !x.is_degenerate(1, e)).collect(),
            tris: (0..x.size(2)).filter(|&t| !x.is_degenerate(2, t)).collect(),
        }
    }
}

fn truncated3(x: &TruncatedSimplicialSet) -> Result<TruncatedSimplicialSet> {
    match x.max_level() {
        3 => Ok(x.clone()),
        l if l > 3 => x.truncate(3),
        _ => Err(Error::Precondition("needs levels 0..3".into())),
    }
}

/// Fills in the 3-cell generators from the 2-cell ones.
fn close_relations(p: &MonPresentation, m: &StrictMonCat, objects: Vec<usize>, mut gens: Vec<usize>) -> Result<Assignment> {
    for r in &p.relations {
        debug_assert_eq!(gens.len(), r.generator);
        let v = eval(m, &objects, &gens, &r.left).ok_or_else(|| Error::internal("relation does not evaluate"))?;
        gens.push(v);
    }
    Ok(Assignment {
        objects,
        morphisms: gens,
    })
}

/// The functor `Φ tr3 X → M` corresponding to `f : X → Ψ M`.
fn transpose(
    p: &MonPresentation,
    cells: &Cells,
    nerve: &Nerve,
    m: &StrictMonCat,
    f: &SSetMap,
) -> Result<Assignment> {
    let objects = cells.edges.iter().map(|&e| f.apply(1, e)).collect();
    let gens = cells.tris.iter().map(|&t| nerve.triangles[f.apply(2, t)].alpha).collect();
    close_relations(p, m, objects, gens)
}

/// Enumerates both sides and certifies that transposition is a bijection.
pub fn adjunction_check(x: &TruncatedSimplicialSet, m: &StrictMonCat) -> Result<BijectionCertificate> {
    let x = truncated3(x)?;
    let p = phi_tr3(&x)?;
    let functors = hom_moncat(&p, m)?;
    let nerve = duskin_nerve_labelled(&deloop(m)?)?;
    let maps = enumerate_maps(&x, &nerve.sset)?;
    let cells = Cells::of(&x);
    let position: HashMap<&Assignment, usize> = functors.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut seen = HashSet::new();
    let mut matched = Vec::with_capacity(maps.len());
    for (i, f) in maps.iter().enumerate() {
        let a = transpose(&p, &cells, &nerve, m, f)?;
        let j = *position
            .get(&a)
            .ok_or_else(|| Error::Certification(format!("map {i} transposes to a non-functor {a:?}")))?;
        if !seen.insert(j) {
            return Err(Error::Certification(format!("map {i} collides on functor {j}")));
        }
        matched.push(j);
    }
    if maps.len() != functors.len() {
        return Err(Error::Certification(format!(
            "{} simplicial maps but {} monoidal functors",
            maps.len(),
            functors.len()
        )));
    }
    Ok(BijectionCertificate {
        maps: maps.len(),
        functors: functors.len(),
        transpose: matched,
    })
}

/// Checks `transpose(f ∘ g) = transpose(f) ∘ Φ(g)` for every `f : X → Ψ M`.
/// Returns the number of maps checked.
pub fn naturality_in_source(g: &SSetMap, m: &StrictMonCat) -> Result<usize> {
    let (xs, x) = (truncated3(&g.source)?, truncated3(&g.target)?);
    let g = SSetMap::new(xs.clone(), x.clone(), (0..=3).map(|l| (0..xs.size(l)).map(|c| g.apply(l, c)).collect()).collect())?;
    let (ps, p) = (phi_tr3(&xs)?, phi_tr3(&x)?);
    let (cs, c) = (Cells::of(&xs), Cells::of(&x));
    let col = Collapse {
        x: &x,
        letter: c.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect(),
        triangle: c.tris.iter().enumerate().map(|(i, &t)| (t, i)).collect(),
    };
    let nerve = duskin_nerve_labelled(&deloop(m)?)?;
    let maps = enumerate_maps(&x, &nerve.sset)?;
    for (i, f) in maps.iter().enumerate() {
        let a = transpose(&p, &c, &nerve, m, f)?;
        let objects = cs
            .edges
            .iter()
            .map(|&e| tensor_objects(m, &a.objects, &col.letters(g.apply(1, e))))
            .collect::<Vec<_>>();
        let gens = cs
            .tris
            .iter()
            .map(|&t| eval(m, &a.objects, &a.morphisms, &col.expr(g.apply(2, t))))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::internal("image expression does not evaluate"))?;
        let restricted = close_relations(&ps, m, objects, gens)?;
        let direct = transpose(&ps, &cs, &nerve, m, &g.compose(f)?)?;
        if restricted != direct {
            return Err(Error::Certification(format!("naturality in X fails at map {i}")));
        }
    }
    Ok(maps.len())
}

/// A strict monoidal functor between finite strict monoidal categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct MonFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

/// Checks `transpose(Ψ(k) ∘ f) = k ∘ transpose(f)` for every `f : X → Ψ M`.
pub fn naturality_in_target(
    x: &TruncatedSimplicialSet,
    k: &MonFunctor,
    m: &StrictMonCat,
    m2: &StrictMonCat,
) -> Result<usize> {
    let x = truncated3(x)?;
    let p = phi_tr3(&x)?;
    let cells = Cells::of(&x);
    let (n, n2) = (duskin_nerve_labelled(&deloop(m)?)?, duskin_nerve_labelled(&deloop(m2)?)?);
    let k2 = Functor2 {
        on_objects: vec![0],
        on_one_cells: k.objects.clone(),
        on_two_cells: k.morphisms.clone(),
    };
    let r = k2.validate(&deloop(m)?, &deloop(m2)?);
    if !r.is_valid() {
        return Err(Error::Invalid {
            kind: "monoidal functor",
            report: r,
        });
    }
    let psi_k = nerve_map(&k2, &n, &n2)?;
    let maps = enumerate_maps(&x, &n.sset)?;
    for (i, f) in maps.iter().enumerate() {
        let a = transpose(&p, &cells, &n, m, f)?;
        let pushed = Assignment {
            objects: a.objects.iter().map(|&o| k.objects[o]).collect(),
            morphisms: a.morphisms.iter().map(|&h| k.morphisms[h]).collect(),
        };
        let direct = transpose(&p, &cells, &n2, m2, &f.compose(&psi_k)?)?;
        if pushed != direct {
            return Err(Error::Certification(format!("naturality in M fails at map {i}")));
        }
    }
    Ok(maps.len())
}

/// A planar tree: a wire carrying a letter, or a generator applied to one
/// subtree per input. Morphisms of single-output presentations are forests.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, schemars::JsonSchema)]
pub enum Tree {
    Leaf(usize),
    Node(usize, Vec<Tree>),
}

impl Tree {
    fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(_, cs) => 1 + cs.iter().map(Tree::size).sum::<usize>(),
        }
    }

    fn root(&self, p: &MonPresentation) -> Option<usize> {
        match self {
            Tree::Leaf(l) => Some(*l),
            Tree::Node(g, _) => p.generators[*g].output,
        }
    }
}

pub type Forest = Vec<Tree>;

fn forest_size(f: &[Tree]) -> usize {
    f.iter().map(Tree::size).sum()
}

/// Replaces the leaves of `later`, left to right, by the trees of `earlier`.
fn graft(later: &Tree, earlier: &mut std::vec::IntoIter<Tree>) -> Tree {
    match later {
        Tree::Leaf(_) => earlier.next().expect("typed composite"),
        Tree::Node(g, cs) => Tree::Node(*g, cs.iter().map(|c| graft(c, earlier)).collect()),
    }
}

/// The forest of a well-typed expression.
pub fn forest(p: &MonPresentation, e: &Expr) -> Result<Forest> {
    p.type_of(e)?;
    if let Some(g) = p.generators.iter().find(|g| g.output.is_none()) {
        return Err(Error::Precondition(format!(
            "generator {} has no output letter; terms are forests only for single-output generators",
            g.name
        )));
    }
    Ok(build_forest(p, e))
}

fn build_forest(p: &MonPresentation, e: &Expr) -> Forest {
    match e {
        Expr::Id(ls) => ls.iter().map(|&l| Tree::Leaf(l)).collect(),
        Expr::Gen(g) => vec![Tree::Node(*g, p.generators[*g].inputs.iter().map(|&l| Tree::Leaf(l)).collect())],
        Expr::Tensor(ps) => ps.iter().flat_map(|x| build_forest(p, x)).collect(),
        Expr::Comp(later, earlier) => {
            let mut it = build_forest(p, earlier).into_iter();
            build_forest(p, later).iter().map(|t| graft(t, &mut it)).collect()
        }
    }
}

/// Binds the leaves of `pattern`, in order, to subtrees of `t`.
fn matches(p: &MonPresentation, pattern: &Tree, t: &Tree, bound: &mut Vec<Tree>) -> bool {
    match (pattern, t) {
        (Tree::Leaf(l), _) => {
            bound.push(t.clone());
            t.root(p) == Some(*l)
        }
        (Tree::Node(g, ps), Tree::Node(h, ts)) if g == h => {
            ps.iter().zip(ts).all(|(a, b)| matches(p, a, b, bound))
        }
        _ => false,
    }
}

/// One-step rewrites of `t` anywhere inside it.
fn rewrites(p: &MonPresentation, rules: &[(Tree, Tree)], t: &Tree, out: &mut Vec<Tree>) {
    for (from, to) in rules {
        let mut bound = Vec::new();
        if matches(p, from, t, &mut bound) {
            out.push(graft(to, &mut bound.into_iter()));
        }
    }
    if let Tree::Node(g, cs) = t {
        for (i, c) in cs.iter().enumerate() {
            let mut inner = Vec::new();
            rewrites(p, rules, c, &mut inner);
            for r in inner {
                let mut cs2 = cs.clone();
                cs2[i] = r;
                out.push(Tree::Node(*g, cs2));
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum WordOutcome {
    Equal,
    /// The whole class of the first term was explored below the bound.
    Distinct,
    /// The class reaches terms larger than `bound` without meeting the other term.
    Undecided { bound: usize },
}

/// Most terms one query will visit before giving up as undecided.
const STATE_LIMIT: usize = 200_000;

/// Equality of two parallel terms under the relations, by exploring the
/// congruence class of `m1` among terms with at most `bound` generator
/// vertices. The default bound is the larger term size plus two.
pub fn presentation_equal(p: &MonPresentation, m1: &Expr, m2: &Expr, bound: Option<usize>) -> Result<WordOutcome> {
    validate_presentation(p).into_result("presentation")?;
    let (t1, t2) = (p.type_of(m1)?, p.type_of(m2)?);
    if t1 != t2 {
        return Err(Error::Precondition(format!("terms are not parallel: {t1:?} vs {t2:?}")));
    }
    let (a, b) = (forest(p, m1)?, forest(p, m2)?);
    let bound = bound.or(p.bound).unwrap_or(forest_size(&a).max(forest_size(&b)) + 2);
    let mut rules = Vec::new();
    for r in &p.relations {
        let sides = [Expr::Gen(r.generator), r.left.clone(), r.right.clone()].map(|e| build_forest(p, &e));
        for x in &sides {
            for y in &sides {
                if x != y {
                    rules.push((x[0].clone(), y[0].clone()));
                }
            }
        }
    }
    let mut seen: HashSet<Forest> = HashSet::from([a.clone()]);
    let mut queue = VecDeque::from([a]);
    let mut truncated = false;
    while let Some(f) = queue.pop_front() {
        if f == b {
            return Ok(WordOutcome::Equal);
        }
        for (i, t) in f.iter().enumerate() {
            let mut next = Vec::new();
            rewrites(p, &rules, t, &mut next);
            for n in next {
                let mut g = f.clone();
                g[i] = n;
                if forest_size(&g) > bound {
                    truncated = true;
                } else if !seen.contains(&g) {
                    if seen.len() >= STATE_LIMIT {
                        return Ok(WordOutcome::Undecided { bound });
                    }
                    seen.insert(g.clone());
                    queue.push_back(g);
                }
            }
        }
    }
    Ok(if truncated { WordOutcome::Undecided { bound } } else { WordOutcome::Distinct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::operadic::to_simplicial;

    fn gen(p: &MonPresentation, name: &str) -> Expr {
        Expr::Gen(p.generators.iter().position(|g| g.name == name).expect(name))
    }

    fn id(p: &MonPresentation, names: &[&str]) -> Expr {
        Expr::Id(names.iter().map(|n| p.letters.iter().position(|l| l == n).expect(n)).collect())
    }

    #[test]
    fn phi0_shapes() {
        let shape = |k| {
            let p = phi0(k).unwrap();
            assert!(validate_presentation(&p).is_valid());
            (p.letters.len(), p.generators.len(), p.relations.len())
        };
        assert_eq!([0, 1, 2, 3].map(shape), [(0, 0, 0), (1, 0, 0), (3, 1, 0), (6, 5, 1)]);
        assert!(matches!(phi0(4), Err(Error::Precondition(_))));
        let p = phi0(2).unwrap();
        let a = &p.generators[0];
        let names = |ls: &[usize]| ls.iter().map(|&l| p.letters[l].as_str()).collect::<Vec<_>>();
        assert_eq!((names(&a.inputs), names(&[a.output.unwrap()])), (vec!["f12", "f01"], vec!["f02"]));
    }

    #[test]
    fn psi_sizes() {
        assert_eq!(psi(&StrictMonCat::trivial()).unwrap().sizes(), vec![1, 1, 1, 1]);
        assert_eq!(psi(&StrictMonCat::cyclic(2)).unwrap().sizes(), vec![1, 2, 4, 8]);
        // thin: one triangle per (f01, f12, f02) with max(f01, f12) ≤ f02, and
        // one 3-simplex per edge labelling satisfying all four face conditions
        let b = [0usize, 1];
        let mut tri = 0;
        let mut simp = 0;
        for f01 in b {
            for f12 in b {
                for f02 in b {
                    tri += usize::from(f01.max(f12) <= f02);
                    for (f23, f13, f03) in b.iter().flat_map(|&x| b.iter().flat_map(move |&y| b.map(|z| (x, y, z)))) {
                        simp += usize::from(
                            f01.max(f12) <= f02 && f12.max(f23) <= f13 && f02.max(f23) <= f03 && f01.max(f13) <= f03,
                        );
                    }
                }
            }
        }
        assert_eq!(tri, 5);
        assert_eq!(psi(&fixtures::poset_max()).unwrap().sizes(), vec![1, 2, tri, simp]);
    }

    #[test]
    fn hom_counts_match_psi_levels() {
        let z2 = StrictMonCat::cyclic(2);
        let counts: Vec<usize> = (0..=3).map(|k| hom_moncat(&phi0(k).unwrap(), &z2).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 8]);
        for name in fixtures::MONCATS {
            let m = fixtures::moncat(name).unwrap();
            let sizes = psi(&m).unwrap().sizes();
            for (k, &size) in sizes.iter().enumerate() {
                assert_eq!(hom_moncat(&phi0(k).unwrap(), &m).unwrap().len(), size, "{name} level {k}");
            }
        }
    }

    #[test]
    fn simplices_collapse_to_phi0() {
        for k in 0..=3 {
            let x = TruncatedSimplicialSet::standard_simplex(k, 3).unwrap();
            let p = phi_tr3(&x).unwrap();
            assert_eq!(p.normalized(), phi0(k).unwrap().normalized(), "k = {k}");
        }
    }

    #[test]
    fn walking_arrow_has_no_generators() {
        let x = duskin_nerve(&fixtures::arrow()).unwrap();
        let p = phi_tr3(&x).unwrap();
        assert_eq!((p.letters.len(), p.generators.len(), p.relations.len()), (1, 0, 0));
    }

    #[test]
    fn adjunction_counts() {
        let z2 = StrictMonCat::cyclic(2);
        let d0 = TruncatedSimplicialSet::standard_simplex(0, 3).unwrap();
        for name in fixtures::MONCATS {
            let c = adjunction_check(&d0, &fixtures::moncat(name).unwrap()).unwrap();
            assert_eq!((c.maps, c.functors), (1, 1));
        }
        let d2 = TruncatedSimplicialSet::standard_simplex(2, 3).unwrap();
        let c = adjunction_check(&d2, &z2).unwrap();
        assert_eq!((c.maps, c.functors), (4, 4));
    }

    #[test]
    fn adjunction_on_corpus() {
        let mut xs = vec![
            TruncatedSimplicialSet::standard_simplex(3, 3).unwrap(),
            duskin_nerve(&fixtures::arrow()).unwrap(),
            duskin_nerve(&fixtures::two_cell()).unwrap(),
        ];
        for name in ["odot", "bq1", "bq2"] {
            xs.push(to_simplicial(&fixtures::operadic(name).unwrap()).unwrap());
        }
        for x in &xs {
            for name in ["trivial", "z2", "endo-z2", "poset-max"] {
                let m = fixtures::moncat(name).unwrap();
                let c = adjunction_check(x, &m).unwrap();
                assert_eq!(c.maps, c.functors, "{name}");
            }
        }
    }

    #[test]
    fn naturality_squares_commute() {
        let z2 = StrictMonCat::cyclic(2);
        let pm = fixtures::poset_max();
        for j in 0..=2 {
            for k in 0..=3 {
                let a = TruncatedSimplicialSet::standard_simplex(j, 3).unwrap();
                let b = TruncatedSimplicialSet::standard_simplex(k, 3).unwrap();
                for g in enumerate_maps(&a, &b).unwrap() {
                    naturality_in_source(&g, &z2).unwrap();
                    naturality_in_source(&g, &pm).unwrap();
                }
            }
        }
        let x = TruncatedSimplicialSet::standard_simplex(3, 3).unwrap();
        let twisted = fixtures::cyclic_with_automorphisms(2);
        let include = MonFunctor {
            objects: vec![0, 1],
            morphisms: vec![0, 2],
        };
        assert_eq!(naturality_in_target(&x, &include, &z2, &twisted).unwrap(), 8);
        let collapse = MonFunctor {
            objects: vec![0, 0],
            morphisms: vec![0, 0],
        };
        naturality_in_target(&x, &collapse, &z2, &StrictMonCat::trivial()).unwrap();
    }

    #[test]
    fn relation_trees_are_equal() {
        let p = phi0(3).unwrap();
        let rel = &p.relations[0];
        let terms = [Expr::Gen(rel.generator), rel.left.clone(), rel.right.clone()];
        for a in &terms {
            for b in &terms {
                assert_eq!(presentation_equal(&p, a, b, None).unwrap(), WordOutcome::Equal);
            }
        }
        let f = id(&p, &["f23", "f12", "f01"]);
        assert_eq!(presentation_equal(&p, &f, &f, None).unwrap(), WordOutcome::Equal);
    }

    #[test]
    fn composition_figure_example() {
        let p = phi0(3).unwrap();
        let [a013, a023, a123, s] = ["α013", "α023", "α123", "σ0123"].map(|n| gen(&p, n));
        let first = Expr::Tensor(vec![a123, id(&p, &["f01", "f02", "f23", "f02"]), s.clone()]);
        let second = Expr::Tensor(vec![a013, id(&p, &["f02"]), a023.clone(), id(&p, &["f03"])]);
        let composite = Expr::comp(second, first);
        let normal = Expr::Tensor(vec![s.clone(), id(&p, &["f02"]), a023, s]);
        assert_eq!(presentation_equal(&p, &composite, &normal, None).unwrap(), WordOutcome::Equal);
    }

    #[test]
    fn equality_respects_composition_and_tensor() {
        let p = phi0(3).unwrap();
        let rel = &p.relations[0];
        let a012 = gen(&p, "α012");
        let after = |e: &Expr| Expr::comp(e.clone(), Expr::Tensor(vec![id(&p, &["f23"]), id(&p, &["f12", "f01"])]));
        let beside = |e: &Expr| Expr::Tensor(vec![a012.clone(), e.clone()]);
        for wrap in [&after as &dyn Fn(&Expr) -> Expr, &beside] {
            let (l, r) = (wrap(&rel.left), wrap(&rel.right));
            assert_eq!(presentation_equal(&p, &l, &r, None).unwrap(), WordOutcome::Equal);
        }
    }

    fn loop_presentation(idempotent: bool) -> MonPresentation {
        let g = |name: &str| Generator {
            name: name.into(),
            inputs: vec![0],
            output: Some(0),
            vertices: vec![],
        };
        let mut relations = Vec::new();
        if idempotent {
            // s = 1 = s ∘ s
            relations.push(Relation {
                generator: 2,
                left: Expr::Id(vec![0]),
                right: Expr::comp(Expr::Gen(2), Expr::Gen(2)),
            });
        }
        MonPresentation {
            letters: vec!["a".into()],
            boundaries: vec![],
            generators: vec![g("g"), g("h"), g("s")],
            relations,
            bound: None,
        }
    }

    #[test]
    fn distinct_and_undecided_outcomes() {
        let free = loop_presentation(false);
        let (g, h) = (Expr::Gen(0), Expr::Gen(1));
        assert_eq!(presentation_equal(&free, &g, &h, None).unwrap(), WordOutcome::Distinct);
        let p = loop_presentation(true);
        assert_eq!(presentation_equal(&p, &g, &h, Some(3)).unwrap(), WordOutcome::Undecided { bound: 3 });
        let gs = Expr::comp(Expr::Gen(0), Expr::Gen(2));
        assert_eq!(presentation_equal(&p, &gs, &g, None).unwrap(), WordOutcome::Equal);
    }

    #[test]
    fn ill_typed_queries_are_rejected() {
        let p = phi0(3).unwrap();
        let e = presentation_equal(&p, &gen(&p, "α012"), &gen(&p, "α123"), None);
        assert!(matches!(e, Err(Error::Precondition(_))));
        let bad = Expr::comp(gen(&p, "α012"), gen(&p, "α123"));
        assert!(p.type_of(&bad).is_err());
        // α123 placed after α013 ⊗ 1 does not compose
        let swapped = Expr::comp(gen(&p, "α123"), Expr::Tensor(vec![gen(&p, "α013"), id(&p, &["f01"])]));
        assert!(p.type_of(&swapped).is_err());
    }

    #[test]
    fn presentations_round_trip_through_json() {
        let p = phi0(3).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<MonPresentation>(&s).unwrap(), p);
    }
}
