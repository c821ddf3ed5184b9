//! Unary operadic 2-categories in unpacked form: a 2-category together with
//! top face maps φ and top degeneracy maps u on its nerve.
//!
//! The assembled simplicial set has `X0 = π0`, `X1 = objects`, `X2 = 1-cells`,
//! `X3 = lax triangles`, `X4 = 3-simplices`. On `X1` the faces are
//! `d0 = π` and `d1 = φ0`. Everywhere else φ is the top face and u the top
//! degeneracy.

use std::collections::HashMap;

use crate::nerve::{dec_nerve_iso, duskin_nerve_labelled, nerve_map, Nerve};
use crate::report::ValidationReport;
use crate::simplicial::{
    coskeleton_extend, enumerate_maps, validate_simplicial, SSetMap, TruncatedSimplicialSet,
};
use crate::twocat::{
    deloop, lax_slice_sum, validate_2category, Finite2Category, Functor2, SliceArrow, StrictMonCat,
};
use crate::category::FiniteCategory;
use crate::{Error, Result};

/// φ and u at every level. Triangles and 3-simplices are indexed as in the
/// labelled nerve of the underlying 2-category.
#[derive(Clone, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize, schemars::JsonSchema)]
pub struct StructureMaps {
    /// objects → components
    pub phi0: Vec<usize>,
    /// 1-cells → objects
    pub phi1: Vec<usize>,
    /// triangles → 1-cells
    pub phi2: Vec<usize>,
    /// 3-simplices → triangles
    pub phi3: Vec<usize>,
    /// components → objects
    pub u_neg1: Vec<usize>,
    /// objects → 1-cells
    pub u0: Vec<usize>,
    /// 1-cells → triangles
    pub u1: Vec<usize>,
    /// triangles → 3-simplices
    pub u2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryOperadic2Cat {
    cat: Finite2Category,
    nerve: Nerve,
    components: usize,
    pi: Vec<usize>,
    maps: StructureMaps,
}

/// Connected components of the underlying graph, numbered in order of their
/// smallest object.
pub fn connected_components(c: &Finite2Category) -> (usize, Vec<usize>) {
    let mut parent: Vec<usize> = (0..c.objects).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for &(s, t) in &c.one_cells {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut pi = Vec::with_capacity(c.objects);
    for x in 0..c.objects {
        let root = find(&mut parent, x);
        let next = label.len();
        pi.push(*label.entry(root).or_insert(next));
    }
    (label.len(), pi)
}

impl UnaryOperadic2Cat {
    /// Checks that `cat` is a valid 2-category and that every map has the
    /// right length and range. The operadic equations are left to
    /// [`validate_operadic`].
    pub fn new(cat: Finite2Category, maps: StructureMaps) -> Result<Self> {
        let nerve = duskin_nerve_labelled(&cat)?;
        let (components, pi) = connected_components(&cat);
        let o = Self {
            cat,
            nerve,
            components,
            pi,
            maps,
        };
        o.check_ranges()?;
        Ok(o)
    }

    /// [`Self::new`] followed by [`validate_operadic`].
    pub fn validated(cat: Finite2Category, maps: StructureMaps) -> Result<Self> {
        let o = Self::new(cat, maps)?;
        validate_operadic(&o).into_result("operadic 2-category")?;
        Ok(o)
    }

    fn check_ranges(&self) -> Result<()> {
        let (n, e, _) = self.cat.sizes();
        let (nt, ns, k) = (self.triangles(), self.simplices(), self.components);
        let m = &self.maps;
        let tables: [(&str, &Vec<usize>, usize, usize); 8] = [
            ("phi0", &m.phi0, n, k),
            ("phi1", &m.phi1, e, n),
            ("phi2", &m.phi2, nt, e),
            ("phi3", &m.phi3, ns, nt),
            ("u_neg1", &m.u_neg1, k, n),
            ("u0", &m.u0, n, e),
            ("u1", &m.u1, e, nt),
            ("u2", &m.u2, nt, ns),
        ];
        for (name, table, len, range) in tables {
            if table.len() != len {
                return Err(Error::malformed(format!(
                    "{name} has {} entries, expected {len}",
                    table.len()
                )));
            }
            if let Some(v) = table.iter().find(|&&v| v >= range) {
                return Err(Error::malformed(format!("{name} value {v} outside 0..{range}")));
            }
        }
        Ok(())
    }

    /// Replaces the structure maps, rechecking lengths and ranges.
    pub fn with_maps(&self, maps: StructureMaps) -> Result<Self> {
        let o = Self {
            maps,
            ..self.clone()
        };
        o.check_ranges()?;
        Ok(o)
    }

    pub fn cat(&self) -> &Finite2Category {
        &self.cat
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn maps(&self) -> &StructureMaps {
        &self.maps
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn pi(&self, object: usize) -> usize {
        self.pi[object]
    }

    pub fn pi_table(&self) -> &[usize] {
        &self.pi
    }

    pub fn triangles(&self) -> usize {
        self.nerve.triangles.len()
    }

    pub fn simplices(&self) -> usize {
        self.nerve.simplices.len()
    }

    /// The trivial object of a component.
    pub fn trivial(&self, component: usize) -> usize {
        self.maps.u_neg1[component]
    }

    pub fn is_trivial(&self, object: usize) -> bool {
        self.maps.u_neg1.contains(&object)
    }

    /// The triangle `1_{g∘f} : g ∘ f ⇒ g ∘ f`.
    pub fn identity_triangle(&self, f: usize, g: usize) -> usize {
        let c = &self.cat;
        self.nerve
            .triangle(f, g, c.id2(c.comp(g, f)))
            .expect("identity triangle is always present")
    }

    /// Level sizes of the assembled simplicial set.
    pub fn sizes(&self) -> Vec<usize> {
        vec![
            self.components,
            self.cat.objects,
            self.cat.one_cells.len(),
            self.triangles(),
            self.simplices(),
        ]
    }
}

/// Every failed condition of the unpacked characterization, tagged with its
/// item number.
pub fn validate_operadic(o: &UnaryOperadic2Cat) -> ValidationReport {
    let mut r = ValidationReport::new();
    let c = &o.cat;
    let x = &o.nerve.sset;
    let m = &o.maps;
    let (n, e, _) = c.sizes();
    let (nt, ns, k) = (o.triangles(), o.simplices(), o.components);

    for t in 0..nt {
        let want = (m.phi1[x.face(2, 1, t)], m.phi1[x.face(2, 0, t)]);
        if c.one_cells[m.phi2[t]] != want {
            r.push_item(3, "φ(α) : φ(h) → φ(g)", format!("triangle {t}"));
        }
    }
    for s in 0..ns {
        let t = m.phi3[s];
        for i in 0..3 {
            if x.face(2, i, t) != m.phi2[x.face(3, i, s)] {
                r.push_item(4, format!("d{i} φ(σ) = φ(d{i} σ)"), format!("3-simplex {s}"));
            }
        }
    }
    for a in 0..n {
        if c.one_cells[m.u0[a]] != (a, m.u_neg1[o.pi[a]]) {
            r.push_item(6, "u_a : a → u_{π(a)}", format!("object {a}"));
        }
    }
    for q in 0..e {
        let (src, tgt) = c.one_cells[q];
        let t = m.u1[q];
        if x.faces_of(2, t) != [m.u0[tgt], m.u0[src], q] {
            r.push_item(7, "u_q : u_y ∘ q ⇒ u_x", format!("1-cell {q}"));
        }
    }
    for t in 0..nt {
        let want: Vec<usize> = (0..3).map(|i| m.u1[x.face(2, i, t)]).chain([t]).collect();
        if x.faces_of(3, m.u2[t]) != want {
            r.push_item(8, "u_α = (u_g, u_h, u_f, α)", format!("triangle {t}"));
        }
    }
    for q in 0..e {
        if o.pi[m.phi1[q]] != m.phi0[c.tgt1(q)] {
            r.push_item(9, "π(φ(q)) = φ(target of q)", format!("1-cell {q}"));
        }
    }
    for comp in 0..k {
        if o.pi[m.u_neg1[comp]] != comp {
            r.push_item(10, "π(u_c) = c", format!("component {comp}"));
        }
    }
    for a in 0..n {
        if m.phi1[c.id1(a)] != m.u_neg1[m.phi0[a]] {
            r.push_item(11, "φ(1_a) = u_{φ(a)}", format!("object {a}"));
        }
    }
    for q in 0..e {
        if m.phi2[x.degen(1, 1, q)] != m.u0[m.phi1[q]] {
            r.push_item(12, "φ(1_y ∘ q ⇒ q) = u_{φ(q)}", format!("1-cell {q}"));
        }
        if m.phi2[x.degen(1, 0, q)] != c.id1(m.phi1[q]) {
            r.push_item(12, "φ(q ∘ 1_x ⇒ q) = 1_{φ(q)}", format!("1-cell {q}"));
        }
    }
    for t in 0..nt {
        let p = m.phi2[t];
        if m.phi3[x.degen(2, 2, t)] != m.u1[p] {
            r.push_item(13, "φ(s2 α) = u_{φ(α)}", format!("triangle {t}"));
        }
        if m.phi3[x.degen(2, 1, t)] != x.degen(1, 1, p) {
            r.push_item(13, "φ(s1 α) = s1 φ(α)", format!("triangle {t}"));
        }
        if m.phi3[x.degen(2, 0, t)] != x.degen(1, 0, p) {
            r.push_item(13, "φ(s0 α) = s0 φ(α)", format!("triangle {t}"));
        }
    }
    for comp in 0..k {
        let v = m.u_neg1[comp];
        if m.u0[v] != c.id1(v) {
            r.push_item(14, "u_{u_c} = 1_{u_c}", format!("component {comp}"));
        }
    }
    for a in 0..n {
        if m.u1[m.u0[a]] != x.degen(1, 1, m.u0[a]) {
            r.push_item(14, "u_{u_a} = s1 u_a", format!("object {a}"));
        }
    }
    for q in 0..e {
        if m.u2[m.u1[q]] != x.degen(2, 2, m.u1[q]) {
            r.push_item(14, "u_{u_q} = s2 u_q", format!("1-cell {q}"));
        }
    }
    for comp in 0..k {
        if m.phi0[m.u_neg1[comp]] != comp {
            r.push_item(15, "φ∘u = 1 on components", format!("component {comp}"));
        }
    }
    for a in 0..n {
        if m.phi1[m.u0[a]] != a {
            r.push_item(15, "φ∘u = 1 on objects", format!("object {a}: φ(u_a) = {}", m.phi1[m.u0[a]]));
        }
    }
    for q in 0..e {
        if m.phi2[m.u1[q]] != q {
            r.push_item(15, "φ∘u = 1 on 1-cells", format!("1-cell {q}"));
        }
    }
    for t in 0..nt {
        if m.phi3[m.u2[t]] != t {
            r.push_item(15, "φ∘u = 1 on triangles", format!("triangle {t}"));
        }
    }
    for s in 0..ns {
        if m.phi2[m.phi3[s]] != m.phi2[x.face(3, 3, s)] {
            r.push_item(16, "φφσ = φ(α012)", format!("3-simplex {s}"));
        }
    }
    for t in 0..nt {
        if m.phi1[m.phi2[t]] != m.phi1[x.face(2, 2, t)] {
            r.push_item(16, "φφα = φ(f)", format!("triangle {t}"));
        }
    }
    for q in 0..e {
        if m.phi0[m.phi1[q]] != m.phi0[c.src1(q)] {
            r.push_item(16, "φφq = φ(source of q)", format!("1-cell {q}"));
        }
    }
    for a in 0..n {
        if m.u1[c.id1(a)] != x.degen(1, 0, m.u0[a]) {
            r.push_item(17, "u_{1_x} = s0 u_x", format!("object {a}"));
        }
    }
    for q in 0..e {
        if m.u2[x.degen(1, 0, q)] != x.degen(2, 0, m.u1[q]) {
            r.push_item(17, "u_{s0 q} = s0 u_q", format!("1-cell {q}"));
        }
        if m.u2[x.degen(1, 1, q)] != x.degen(2, 1, m.u1[q]) {
            r.push_item(17, "u_{s1 q} = s1 u_q", format!("1-cell {q}"));
        }
    }
    r
}

/// Builds the 5-level simplicial set without checking any equation.
pub fn assemble_simplicial(o: &UnaryOperadic2Cat) -> Result<TruncatedSimplicialSet> {
    let x = &o.nerve.sset;
    let m = &o.maps;
    let c = &o.cat;
    let face = vec![
        Vec::new(),
        vec![o.pi.clone(), m.phi0.clone()],
        vec![
            x.face_table(1, 0).to_vec(),
            x.face_table(1, 1).to_vec(),
            m.phi1.clone(),
        ],
        vec![
            x.face_table(2, 0).to_vec(),
            x.face_table(2, 1).to_vec(),
            x.face_table(2, 2).to_vec(),
            m.phi2.clone(),
        ],
        vec![
            x.face_table(3, 0).to_vec(),
            x.face_table(3, 1).to_vec(),
            x.face_table(3, 2).to_vec(),
            x.face_table(3, 3).to_vec(),
            m.phi3.clone(),
        ],
    ];
    let degen = vec![
        vec![m.u_neg1.clone()],
        vec![c.id1.clone(), m.u0.clone()],
        vec![
            x.degen_table(1, 0).to_vec(),
            x.degen_table(1, 1).to_vec(),
            m.u1.clone(),
        ],
        vec![
            x.degen_table(2, 0).to_vec(),
            x.degen_table(2, 1).to_vec(),
            x.degen_table(2, 2).to_vec(),
            m.u2.clone(),
        ],
    ];
    TruncatedSimplicialSet::new(4, o.sizes(), face, degen)
}

pub fn to_simplicial(o: &UnaryOperadic2Cat) -> Result<TruncatedSimplicialSet> {
    validate_operadic(o).into_result("operadic 2-category")?;
    assemble_simplicial(o)
}

/// ⊙: one object, one cell at every level.
pub fn terminal_odot() -> UnaryOperadic2Cat {
    let maps = StructureMaps {
        phi0: vec![0],
        phi1: vec![0],
        phi2: vec![0],
        phi3: vec![0],
        u_neg1: vec![0],
        u0: vec![0],
        u1: vec![0],
        u2: vec![0],
    };
    UnaryOperadic2Cat::new(Finite2Category::terminal(), maps).expect("⊙ is well formed")
}

/// Bouquets on `0..size`: objects `(a, b)` at index `a * size + b`, a unique
/// 1-cell `(a', b) → (a'', b)` with fiber `(a', a'')`, identity 2-cells only.
pub fn bouquets(size: usize) -> Result<UnaryOperadic2Cat> {
    if size == 0 {
        return Err(Error::Precondition("bouquets need a nonempty set".into()));
    }
    let obj = |a: usize, b: usize| a * size + b;
    let n = size * size;
    let mut morphisms = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x % size == y % size {
                morphisms.push((x, y));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut compose = std::collections::BTreeMap::new();
    for (f, &(x, y)) in morphisms.iter().enumerate() {
        for (g, &(y2, z)) in morphisms.iter().enumerate() {
            if y2 == y {
                compose.insert((g, f), index[&(x, z)]);
            }
        }
    }
    let ids = (0..n).map(|x| index[&(x, x)]).collect();
    let cat = Finite2Category::from_category(&FiniteCategory {
        objects: n,
        morphisms,
        compose,
        ids,
    });
    let nerve = duskin_nerve_labelled(&cat)?;
    let (_, pi) = connected_components(&cat);
    // component of (a, b) is b, and components are numbered by smallest object
    debug_assert!((0..n).all(|x| pi[x] == x % size));
    let tri = |f: usize, g: usize| -> usize {
        nerve
            .triangle(f, g, cat.id2(cat.comp(g, f)))
            .expect("thin triangle")
    };
    let simplex_of = |faces: [usize; 4]| -> usize { nerve.simplex(faces).expect("thin simplex") };
    let arrow = |x: usize, y: usize| index[&(x, y)];
    let phi1: Vec<usize> = cat
        .one_cells
        .iter()
        .map(|&(x, y)| obj(x / size, y / size))
        .collect();
    let phi2: Vec<usize> = nerve
        .triangles
        .iter()
        .map(|t| arrow(phi1[t.h], phi1[t.g]))
        .collect();
    let phi3: Vec<usize> = nerve
        .simplices
        .iter()
        .map(|s| {
            let f = phi2[s.alpha013];
            let g = phi2[s.alpha123];
            tri(f, g)
        })
        .collect();
    let u_neg1: Vec<usize> = (0..size).map(|b| obj(b, b)).collect();
    let u0: Vec<usize> = (0..n).map(|x| arrow(x, u_neg1[x % size])).collect();
    let u1: Vec<usize> = cat
        .one_cells
        .iter()
        .enumerate()
        .map(|(q, &(_, y))| tri(q, u0[y]))
        .collect();
    let u2: Vec<usize> = nerve
        .triangles
        .iter()
        .enumerate()
        .map(|(t, tr)| {
            let faces = [u1[tr.g], u1[tr.h], u1[tr.f], t];
            simplex_of(faces)
        })
        .collect();
    let maps = StructureMaps {
        phi0: (0..n).map(|x| x / size).collect(),
        phi1,
        phi2,
        phi3,
        u_neg1,
        u0,
        u1,
        u2,
    };
    UnaryOperadic2Cat::new(cat, maps)
}

/// The operadic 2-category whose underlying 2-category is the lax slice sum
/// of `c`, with φ and u read off the nerve of `c` through the décalage
/// comparison.
pub fn from_2category(c: &Finite2Category) -> Result<UnaryOperadic2Cat> {
    validate_2category(c).into_result("2-category")?;
    let data = dec_nerve_iso(c)?;
    let inverse = data.iso.inverse();
    let x4 = coskeleton_extend(&data.nerve.sset, 3)?;
    let fwd = data.iso.map();
    let dc = data.slice.category.clone();
    let (_, pi) = connected_components(&dc);
    // the component of a slice object h is that of its codomain
    let comp_of_obj: Vec<usize> = (0..c.objects).map(|x| pi[c.id1(x)]).collect();
    let mut obj_of_comp = vec![0; comp_of_obj.len()];
    for (x, &k) in comp_of_obj.iter().enumerate() {
        obj_of_comp[k] = x;
    }
    let slice_nerve = &data.slice_nerve.sset;
    let maps = StructureMaps {
        phi0: (0..dc.objects).map(|h| comp_of_obj[c.src1(h)]).collect(),
        phi1: data.slice.arrows.iter().map(|a| a.f).collect(),
        phi2: (0..slice_nerve.size(2))
            .map(|t| fwd.apply(1, x4.face(3, 3, inverse.apply(2, t))))
            .collect(),
        phi3: (0..slice_nerve.size(3))
            .map(|s| fwd.apply(2, x4.face(4, 4, inverse.apply(3, s))))
            .collect(),
        u_neg1: obj_of_comp.iter().map(|&x| c.id1(x)).collect(),
        u0: (0..dc.objects).map(|h| fwd.apply(1, x4.degen(1, 1, h))).collect(),
        u1: (0..dc.one_cells.len())
            .map(|a| fwd.apply(2, x4.degen(2, 2, inverse.apply(1, a))))
            .collect(),
        u2: (0..slice_nerve.size(2))
            .map(|t| fwd.apply(3, x4.degen(3, 3, inverse.apply(2, t))))
            .collect(),
    };
    UnaryOperadic2Cat::validated(dc, maps)
}

/// The parametrised construction on a strict monoidal category: the
/// operadic 2-category of its delooping, cross-checked against the direct
/// formulas in terms of `(a, f)` pairs.
pub fn para(m: &StrictMonCat) -> Result<UnaryOperadic2Cat> {
    let c = deloop(m)?;
    let o = from_2category(&c)?;
    let s = lax_slice_sum(&c)?;
    let maps = &o.maps;
    let mismatch = |what: &str| Err(Error::internal(format!("para: {what} disagrees with the direct formula")));
    if maps.u_neg1 != vec![m.unit] || o.components != 1 {
        return mismatch("u_c = I");
    }
    for (i, a) in s.arrows.iter().enumerate() {
        if maps.phi1[i] != a.f {
            return mismatch("φ(a, f) = a");
        }
    }
    for xo in 0..c.one_cells.len() {
        let want = SliceArrow {
            h: xo,
            g: m.unit,
            f: xo,
            alpha: c.id2(xo),
        };
        if maps.u0[xo] != s.arrow_index[&want] {
            return mismatch("u_x = (x, 1_x)");
        }
    }
    // φ(Δ012) = (a01, α012) as an arrow a02 → a12
    let direct_phi2 = |t: usize| -> SliceArrow {
        let tri = o.nerve.triangles[t];
        SliceArrow {
            h: s.arrows[tri.h].f,
            g: s.arrows[tri.g].f,
            f: s.arrows[tri.f].f,
            alpha: s.two_cell_base[tri.alpha],
        }
    };
    for t in 0..o.triangles() {
        if maps.phi2[t] != s.arrow_index[&direct_phi2(t)] {
            return mismatch("φ(Δ012) = (a01, α012)");
        }
    }
    for (q, arrow) in s.arrows.iter().enumerate() {
        // u_F has edges F, u_{x1}, u_{x0} and 2-cell f01
        let t = o.nerve.triangles[maps.u1[q]];
        if t.f != q || t.g != maps.u0[arrow.g] || t.h != maps.u0[arrow.h] || s.two_cell_base[t.alpha] != arrow.alpha {
            return mismatch("u_(a01, f01)");
        }
    }
    // φ(σ) has edges φ(Δ013), φ(Δ123) and 2-cell α012
    for (i, sx) in o.nerve.simplices.iter().enumerate() {
        let tri = o.nerve.triangles[maps.phi3[i]];
        let gamma = s.two_cell_base[o.nerve.triangles[sx.alpha012].alpha];
        if s.arrows[tri.f] != direct_phi2(sx.alpha013)
            || s.arrows[tri.g] != direct_phi2(sx.alpha123)
            || s.two_cell_base[tri.alpha] != gamma
        {
            return mismatch("φ(σ)");
        }
    }
    Ok(o)
}

/// `g` is a quasibijection when every identity triangle `g ∘ f ⇒ g ∘ f` has
/// φ equal to `u_{φ(f)}`.
pub fn is_quasibijection(o: &UnaryOperadic2Cat, g: usize) -> bool {
    let c = &o.cat;
    (0..c.one_cells.len())
        .filter(|&f| c.tgt1(f) == c.src1(g))
        .all(|f| o.maps.phi2[o.identity_triangle(f, g)] == o.maps.u0[o.maps.phi1[f]])
}

/// For each trivial object `v` and each `x` in its component, `u_x` must be
/// terminal in the hom-category into `v`, and `1_v` terminal in `C(v, v)`.
pub fn check_lali_terminal(o: &UnaryOperadic2Cat) -> ValidationReport {
    let mut r = ValidationReport::new();
    let c = &o.cat;
    for x in 0..c.objects {
        let v = o.trivial(o.pi[x]);
        let ux = o.maps.u0[x];
        for f in (0..c.one_cells.len()).filter(|&f| c.one_cells[f] == (x, v)) {
            let n = c.two_cells_between(f, ux).len();
            if n != 1 {
                r.push("lali-terminal", format!("object {x}, 1-cell {f}: {n} 2-cells into u_x"));
            }
        }
        if x == v && ux != c.id1(v) {
            r.push("lali-terminal", format!("u at trivial object {v} is not the identity"));
        }
    }
    r
}

/// A morphism of assembled simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadicFunctor {
    pub source: UnaryOperadic2Cat,
    pub target: UnaryOperadic2Cat,
    pub map: SSetMap,
}

impl OperadicFunctor {
    /// `level_map[k]` maps level k of the source's assembled set.
    pub fn new(
        source: &UnaryOperadic2Cat,
        target: &UnaryOperadic2Cat,
        level_map: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let map = SSetMap::new(assemble_simplicial(source)?, assemble_simplicial(target)?, level_map)?;
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn identity(o: &UnaryOperadic2Cat) -> Result<Self> {
        let level_map = o.sizes().iter().map(|&n| (0..n).collect()).collect();
        Self::new(o, o, level_map)
    }
}

/// Every square that fails, with top faces named φ and top degeneracies u.
pub fn validate_operadic_functor(f: &OperadicFunctor) -> ValidationReport {
    let raw = f.map.validate();
    let mut r = ValidationReport::new();
    for v in raw.violations {
        let rule = rename_top(&v.rule);
        r.push(rule, v.witness);
    }
    r
}

fn rename_top(rule: &str) -> String {
    let parse = |prefix: &str| -> Option<(usize, usize)> {
        let rest = rule.strip_prefix(prefix)?;
        let (i, level) = rest.split_once(" at level ")?;
        Some((i.parse().ok()?, level.parse().ok()?))
    };
    if let Some((i, level)) = parse("face d") {
        if i == level {
            return format!("φ square at level {level}");
        }
    }
    if let Some((j, level)) = parse("degeneracy s") {
        if j == level {
            return format!("u square at level {level}");
        }
    }
    rule.to_string()
}

/// All operadic functors between two operadic 2-categories.
pub fn enumerate_operadic_functors(
    source: &UnaryOperadic2Cat,
    target: &UnaryOperadic2Cat,
) -> Result<Vec<SSetMap>> {
    enumerate_maps(&assemble_simplicial(source)?, &assemble_simplicial(target)?)
}

/// The operadic functor induced by a strict 2-functor `f : c → d` between the
/// lax-slice operadic 2-categories.
pub fn functor_from_2functor(
    f: &Functor2,
    c: &Finite2Category,
    d: &Finite2Category,
) -> Result<OperadicFunctor> {
    f.validate(c, d).into_result("2-functor")?;
    let oc = from_2category(c)?;
    let od = from_2category(d)?;
    let sc = lax_slice_sum(c)?;
    let sd = lax_slice_sum(d)?;
    let sliced = f.on_lax_slices(&sc, &sd)?;
    let on_nerves = nerve_map(&sliced, oc.nerve(), od.nerve())?;
    let on_components = (0..oc.components)
        .map(|k| {
            let x = c.src1(oc.trivial(k));
            od.pi(d.id1(f.on_objects[x]))
        })
        .collect();
    let mut level_map = vec![on_components];
    level_map.extend(on_nerves.level_map);
    OperadicFunctor::new(&oc, &od, level_map)
}

/// Checks that the two characterizations agree on `o`.
pub fn characterizations_agree(o: &UnaryOperadic2Cat) -> Result<bool> {
    let direct = validate_operadic(o).is_valid();
    let simplicial = validate_simplicial(&assemble_simplicial(o)?).is_valid();
    Ok(direct == simplicial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odot_is_valid() {
        let o = terminal_odot();
        assert!(validate_operadic(&o).is_valid());
        assert_eq!(to_simplicial(&o).unwrap().sizes(), vec![1; 5]);
    }

    #[test]
    fn bouquets_sizes() {
        let o = bouquets(2).unwrap();
        let r = validate_operadic(&o);
        assert!(r.is_valid(), "{r}");
        assert_eq!(to_simplicial(&o).unwrap().sizes(), vec![2, 4, 8, 16, 32]);
        assert!(bouquets(0).is_err());
    }

    #[test]
    fn para_cyclic() {
        let o = para(&StrictMonCat::cyclic(2)).unwrap();
        assert_eq!(o.sizes(), vec![1, 2, 4, 8, 16]);
        assert!(validate_simplicial(&to_simplicial(&o).unwrap()).is_valid());
    }

    #[test]
    fn mutated_u0_cites_item_15() {
        let o = para(&StrictMonCat::cyclic(2)).unwrap();
        let mut maps = o.maps().clone();
        maps.u0[1] = maps.u0[0];
        let bad = o.with_maps(maps).unwrap();
        let r = validate_operadic(&bad);
        assert!(r.items().contains(&15), "{r}");
    }

    #[test]
    fn bouquet_quasibijections() {
        let o = bouquets(2).unwrap();
        let c = o.cat();
        for q in 0..c.one_cells.len() {
            let (x, y) = c.one_cells[q];
            assert_eq!(is_quasibijection(&o, q), x == y, "1-cell {q}");
        }
    }
}
