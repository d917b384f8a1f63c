//! Marked and scaled simplicial sets, and categorical patterns.
//!
//! Decorations are stored on nondegenerate cells only; every degenerate edge
//! is implicitly marked and every degenerate triangle implicitly thin.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::sset::{left_cone, pushout, FiniteSimplicialSet, GenId, Product, Pushout, RefJson, SSetJson, SimplexRef, SimplicialMap};
use crate::{Error, Result};

/// Common interface of marked (dimension 1) and scaled (dimension 2) sets.
pub trait Decorated: Sized + Clone {
    /// Dimension of the decorated cells.
    const DIM: usize;

    fn base(&self) -> &FiniteSimplicialSet;

    /// Decorated nondegenerate cells.
    fn cells(&self) -> &BTreeSet<GenId>;

    /// Builds the structure; `cells` must be generators of dimension `DIM`.
    fn from_parts(base: FiniteSimplicialSet, cells: BTreeSet<GenId>) -> Result<Self>;

    fn is_decorated(&self, x: &SimplexRef) -> bool {
        x.dim() == Self::DIM && (x.is_degenerate() || self.cells().contains(&x.gen))
    }

    fn flat(base: &FiniteSimplicialSet) -> Self {
        Self::from_parts(base.clone(), BTreeSet::new()).expect("flat decoration")
    }

    fn sharp(base: &FiniteSimplicialSet) -> Self {
        Self::from_parts(base.clone(), base.gens(Self::DIM).collect()).expect("sharp decoration")
    }

    /// Builds from arbitrary simplex references; degenerate ones are implicit.
    fn from_refs(base: FiniteSimplicialSet, refs: impl IntoIterator<Item = SimplexRef>) -> Result<Self> {
        let mut cells = BTreeSet::new();
        for r in refs {
            base.check_ref(&r)?;
            if r.dim() != Self::DIM {
                return Err(Error::Precondition(format!("decorated cell {} has dimension {}", base.ref_label(&r), r.dim())));
            }
            if !r.is_degenerate() {
                cells.insert(r.gen);
            }
        }
        Self::from_parts(base, cells)
    }

    /// Whether `f` carries decorated cells to decorated cells.
    fn preserved_by(&self, f: &SimplicialMap, target: &Self) -> bool {
        self.cells().iter().all(|&g| target.is_decorated(f.image_of_gen(g)))
    }

    /// The nondegenerate decorated cell count.
    fn count(&self) -> usize {
        self.cells().len()
    }
}

fn check_cells(base: &FiniteSimplicialSet, cells: &BTreeSet<GenId>, dim: usize) -> Result<()> {
    match cells.iter().find(|g| g.dim != dim || g.idx >= base.num_gens(dim)) {
        Some(g) => Err(Error::Precondition(format!("{g:?} is not a nondegenerate {dim}-simplex"))),
        None => Ok(()),
    }
}

/// A simplicial set with a set of marked edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSSet {
    pub base: FiniteSimplicialSet,
    pub marked: BTreeSet<GenId>,
}

impl Decorated for MarkedSSet {
    const DIM: usize = 1;

    fn base(&self) -> &FiniteSimplicialSet {
        &self.base
    }

    fn cells(&self) -> &BTreeSet<GenId> {
        &self.marked
    }

    fn from_parts(base: FiniteSimplicialSet, marked: BTreeSet<GenId>) -> Result<Self> {
        check_cells(&base, &marked, 1)?;
        Ok(MarkedSSet { base, marked })
    }
}

impl MarkedSSet {
    pub fn is_marked(&self, e: &SimplexRef) -> bool {
        self.is_decorated(e)
    }
}

/// A simplicial set with a set of thin triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSSet {
    pub base: FiniteSimplicialSet,
    pub thin: BTreeSet<GenId>,
}

impl Decorated for ScaledSSet {
    const DIM: usize = 2;

    fn base(&self) -> &FiniteSimplicialSet {
        &self.base
    }

    fn cells(&self) -> &BTreeSet<GenId> {
        &self.thin
    }

    fn from_parts(base: FiniteSimplicialSet, thin: BTreeSet<GenId>) -> Result<Self> {
        check_cells(&base, &thin, 2)?;
        Ok(ScaledSSet { base, thin })
    }
}

impl ScaledSSet {
    pub fn is_thin(&self, t: &SimplexRef) -> bool {
        self.is_decorated(t)
    }

    /// Thin triangles given by vertex labels of the base's generators.
    pub fn with_thin_labels(base: FiniteSimplicialSet, labels: &[&str]) -> Result<Self> {
        let cells = labels.iter().map(|l| base.gen_by_label(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))).collect::<Result<_>>()?;
        Self::from_parts(base, cells)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    Flat,
    Sharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Marked,
    Scaled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoration {
    Marked(MarkedSSet),
    Scaled(ScaledSSet),
}

pub fn decorate(x: &FiniteSimplicialSet, style: Style, kind: Kind) -> Decoration {
    match (kind, style) {
        (Kind::Marked, Style::Flat) => Decoration::Marked(MarkedSSet::flat(x)),
        (Kind::Marked, Style::Sharp) => Decoration::Marked(MarkedSSet::sharp(x)),
        (Kind::Scaled, Style::Flat) => Decoration::Scaled(ScaledSSet::flat(x)),
        (Kind::Scaled, Style::Sharp) => Decoration::Scaled(ScaledSSet::sharp(x)),
    }
}

/// Componentwise decoration: a cell of the product is decorated iff both
/// projections are.
pub fn product_decorated<D: Decorated>(a: &D, b: &D) -> (D, Product) {
    let p = Product::new(a.base(), b.base());
    let cells = p
        .set
        .gens(D::DIM)
        .filter(|&g| {
            let (x, y) = p.components(g);
            a.is_decorated(x) && b.is_decorated(y)
        })
        .collect();
    (D::from_parts(p.set.clone(), cells).expect("product cells"), p)
}

/// Pushout with the union of the image decorations.
pub fn pushout_decorated<D: Decorated>(a: &D, x: &D, y: &D, f: &SimplicialMap, g: &SimplicialMap) -> Result<(D, Pushout)> {
    if !a.preserved_by(f, x) || !a.preserved_by(g, y) {
        return Err(Error::Precondition("pushout legs do not preserve decorations".into()));
    }
    let po = pushout(a.base(), x.base(), y.base(), f, g);
    let mut cells = BTreeSet::new();
    for (side, leg) in [(x, &po.leg_x), (y, &po.leg_y)] {
        for &c in side.cells() {
            let im = leg.image_of_gen(c);
            if !im.is_degenerate() {
                cells.insert(im.gen);
            }
        }
    }
    Ok((D::from_parts(po.set.clone(), cells)?, po))
}

/// A cone diagram `K^◁ -> S` of a categorical pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub k: FiniteSimplicialSet,
    pub map: SimplicialMap,
}

/// A base with marked edges, thin triangles and cone diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoricalPattern {
    pub base: FiniteSimplicialSet,
    pub marked: BTreeSet<GenId>,
    pub thin: BTreeSet<GenId>,
    pub cones: Vec<Cone>,
}

impl CategoricalPattern {
    pub fn new(base: FiniteSimplicialSet, marked: BTreeSet<GenId>, thin: BTreeSet<GenId>, cones: Vec<Cone>) -> Result<Self> {
        check_cells(&base, &marked, 1)?;
        check_cells(&base, &thin, 2)?;
        let p = CategoricalPattern { base, marked, thin, cones };
        for (n, c) in p.cones.iter().enumerate() {
            let src = left_cone(&c.k);
            c.map.validate(&src, &p.base)?;
            for e in src.gens(1) {
                if !p.is_marked(c.map.image_of_gen(e)) {
                    return Err(Error::Precondition(format!("cone {n} sends edge {} outside the marked edges", src.label(e))));
                }
            }
            for t in src.gens(2) {
                if !p.is_thin(c.map.image_of_gen(t)) {
                    return Err(Error::Precondition(format!("cone {n} sends triangle {} outside the thin triangles", src.label(t))));
                }
            }
        }
        Ok(p)
    }

    /// Everything marked and thin, no cones.
    pub fn sharp(base: &FiniteSimplicialSet) -> Self {
        CategoricalPattern { base: base.clone(), marked: base.gens(1).collect(), thin: base.gens(2).collect(), cones: Vec::new() }
    }

    pub fn is_marked(&self, e: &SimplexRef) -> bool {
        e.dim() == 1 && (e.is_degenerate() || self.marked.contains(&e.gen))
    }

    pub fn is_thin(&self, t: &SimplexRef) -> bool {
        t.dim() == 2 && (t.is_degenerate() || self.thin.contains(&t.gen))
    }

    pub fn marked_set(&self) -> MarkedSSet {
        MarkedSSet { base: self.base.clone(), marked: self.marked.clone() }
    }

    pub fn scaled_set(&self) -> ScaledSSet {
        ScaledSSet { base: self.base.clone(), thin: self.thin.clone() }
    }
}

/// JSON form: the base plus whichever decorations are present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedJson {
    pub base: SSetJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<RefJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thin: Option<Vec<RefJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<ConeJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    #[serde(rename = "K")]
    pub k: SSetJson,
    pub map: BTreeMap<String, RefJson>,
}

fn cells_json(base: &FiniteSimplicialSet, cells: &BTreeSet<GenId>) -> Vec<RefJson> {
    cells.iter().map(|&g| base.ref_json(&SimplexRef::nondeg(g))).collect()
}

fn cells_from_json(base: &FiniteSimplicialSet, refs: &[RefJson], dim: usize) -> Result<BTreeSet<GenId>> {
    let mut out = BTreeSet::new();
    for r in refs {
        let x = base.resolve_ref(r)?;
        if x.dim() != dim {
            return Err(Error::Malformed(format!("`{}` is not a {dim}-simplex", r.g)));
        }
        if !x.is_degenerate() {
            out.insert(x.gen);
        }
    }
    Ok(out)
}

impl MarkedSSet {
    pub fn to_json(&self) -> DecoratedJson {
        DecoratedJson { base: self.base.to_json(), marked: Some(cells_json(&self.base, &self.marked)), thin: None, cones: None }
    }

    pub fn from_json(j: &DecoratedJson) -> Result<Self> {
        let base = FiniteSimplicialSet::from_json(&j.base)?;
        let marked = cells_from_json(&base, j.marked.as_deref().unwrap_or_default(), 1)?;
        Self::from_parts(base, marked)
    }
}

impl ScaledSSet {
    pub fn to_json(&self) -> DecoratedJson {
        DecoratedJson { base: self.base.to_json(), marked: None, thin: Some(cells_json(&self.base, &self.thin)), cones: None }
    }

    /// A bare simplicial set is read as flat.
    pub fn from_json(j: &DecoratedJson) -> Result<Self> {
        let base = FiniteSimplicialSet::from_json(&j.base)?;
        let thin = cells_from_json(&base, j.thin.as_deref().unwrap_or_default(), 2)?;
        Self::from_parts(base, thin)
    }
}

impl CategoricalPattern {
    pub fn to_json(&self) -> DecoratedJson {
        let cones = self.cones.iter().map(|c| ConeJson { k: c.k.to_json(), map: c.map.to_json(&left_cone(&c.k), &self.base) }).collect();
        DecoratedJson {
            base: self.base.to_json(),
            marked: Some(cells_json(&self.base, &self.marked)),
            thin: Some(cells_json(&self.base, &self.thin)),
            cones: Some(cones),
        }
    }

    pub fn from_json(j: &DecoratedJson) -> Result<Self> {
        let base = FiniteSimplicialSet::from_json(&j.base)?;
        let marked = cells_from_json(&base, j.marked.as_deref().unwrap_or_default(), 1)?;
        let thin = cells_from_json(&base, j.thin.as_deref().unwrap_or_default(), 2)?;
        let mut cones = Vec::new();
        for c in j.cones.as_deref().unwrap_or_default() {
            let k = FiniteSimplicialSet::from_json(&c.k)?;
            let map = SimplicialMap::from_json(&c.map, &left_cone(&k), &base)?;
            cones.push(Cone { k, map });
        }
        Self::new(base, marked, thin, cones)
    }
}
