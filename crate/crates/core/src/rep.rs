//! Right modules over a bound quiver algebra, as quiver representations.
//!
//! A right module `M` is a vector space `M_v` per vertex and, for every arrow
//! `a: i -> j`, a matrix `M_a` of shape `dim M_i x dim M_j` acting on row
//! vectors. Module maps are per-vertex matrices, also acting on rows.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::{Field, Matrix, RowSpace};
use crate::quiver::Path;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("target algebra is not the opposite presentation")]
    NotOpposite,
    #[error("maps are not composable at position {0}")]
    NotComposable(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Alg<F> = Arc<BoundQuiverAlgebra<F>>;

pub(crate) fn same_algebra<F: Field>(a: &Alg<F>, b: &Alg<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct Representation<F: Field> {
    algebra: Alg<F>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

/// First failed invariant found by [`Representation::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation<F: Field> {
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    Relation {
        index: usize,
        evaluated: Matrix<F>,
    },
}

impl<F: Field> fmt::Display for Violation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape {
                arrow,
                expected,
                found,
            } => write!(
                f,
                "arrow {arrow}: expected a {}x{} matrix, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Violation::Relation { index, evaluated } => {
                write!(f, "relation {index} evaluates to {evaluated:?}, not zero")
            }
        }
    }
}

impl<F: Field> fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.dims == other.dims
            && self.maps == other.maps
    }
}

impl<F: Field> Representation<F> {
    /// Wraps raw data without checking relations; see [`Self::validate`].
    pub fn from_parts(algebra: Alg<F>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        assert_eq!(dims.len(), algebra.num_vertices());
        assert_eq!(maps.len(), algebra.quiver().num_arrows());
        Representation {
            algebra,
            dims,
            maps,
        }
    }

    /// Builds a representation and checks every invariant.
    pub fn new(
        algebra: Alg<F>,
        dims: Vec<usize>,
        maps: Vec<Matrix<F>>,
    ) -> Result<Self, Violation<F>> {
        let rep = Self::from_parts(algebra, dims, maps);
        rep.validate()?;
        Ok(rep)
    }

    pub fn zero(algebra: &Alg<F>) -> Self {
        Self::with_dims(algebra, vec![0; algebra.num_vertices()])
    }

    /// Given dimensions, all arrows acting by zero (semisimple).
    pub fn with_dims(algebra: &Alg<F>, dims: Vec<usize>) -> Self {
        let f = algebra.field();
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.source], dims[a.target]))
            .collect();
        Self::from_parts(algebra.clone(), dims, maps)
    }

    pub fn algebra(&self) -> &Alg<F> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn arrow_map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }
    pub fn arrow_maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Matrix of the action of a path (identity for stationary paths).
    pub fn path_map(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            m = m.mul(&self.maps[a]);
        }
        m
    }

    /// `x * p` for a row vector `x` at the source of `p`.
    pub fn act(&self, x: &[F::Elem], p: &Path) -> Vec<F::Elem> {
        let mut y = x.to_vec();
        for &a in &p.arrows {
            y = self.maps[a].left_apply(&y);
        }
        y
    }

    /// Checks matrix shapes, then that every relation acts as zero.
    pub fn validate(&self) -> Result<(), Violation<F>> {
        let q = self.algebra.quiver();
        for (a, arrow) in q.arrows().iter().enumerate() {
            let expected = (self.dims[arrow.source], self.dims[arrow.target]);
            let found = (self.maps[a].rows(), self.maps[a].cols());
            if expected != found {
                return Err(Violation::Shape {
                    arrow: arrow.name.clone(),
                    expected,
                    found,
                });
            }
        }
        let f = self.field();
        for (index, r) in self.algebra.relations().iter().enumerate() {
            let Some((_, first)) = r.terms.first() else {
                continue;
            };
            let mut acc = Matrix::zeros(f, self.dims[first.source], self.dims[first.target]);
            for (c, p) in &r.terms {
                acc = acc.add(&self.path_map(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Violation::Relation {
                    index,
                    evaluated: acc,
                });
            }
        }
        Ok(())
    }

    /// One-dimensional at `v`, zero elsewhere.
    pub fn simple(algebra: &Alg<F>, v: usize) -> Result<Self, RepError> {
        check_vertex(algebra, v)?;
        let mut dims = vec![0; algebra.num_vertices()];
        dims[v] = 1;
        Ok(Self::with_dims(algebra, dims))
    }

    /// The indecomposable projective `e_v A`: at `w`, the basis paths `v -> w`.
    pub fn projective(algebra: &Alg<F>, v: usize) -> Result<Self, RepError> {
        check_vertex(algebra, v)?;
        let f = algebra.field();
        let q = algebra.quiver();
        let n = algebra.num_vertices();
        let blocks: Vec<Vec<usize>> = (0..n).map(|w| algebra.basis_between(v, w)).collect();
        let mut local = vec![usize::MAX; algebra.dim()];
        for block in &blocks {
            for (pos, &i) in block.iter().enumerate() {
                local[i] = pos;
            }
        }
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (src, tgt) = (&blocks[arrow.source], &blocks[arrow.target]);
                let mut m = Matrix::zeros(f, src.len(), tgt.len());
                for (r, &i) in src.iter().enumerate() {
                    for (k, c) in algebra.times_arrow(i, a) {
                        m.set(r, local[k], c);
                    }
                }
                m
            })
            .collect();
        let dims = blocks.iter().map(Vec::len).collect();
        Ok(Self::from_parts(algebra.clone(), dims, maps))
    }

    /// Position of the generator `e_v` inside the vertex-`v` space of `e_v A`.
    pub fn projective_generator(algebra: &Alg<F>, v: usize) -> usize {
        let e = algebra.idempotent(v);
        algebra
            .basis_between(v, v)
            .iter()
            .position(|&i| i == e)
            .expect("idempotent is a basis path")
    }

    /// The injective `D(A e_v)`, computed as the dual of `e_v A^op`.
    pub fn injective(algebra: &Alg<F>, v: usize) -> Result<Self, RepError> {
        let op = Arc::new(
            algebra
                .opposite()
                .map_err(|e| RepError::Invalid(e.to_string()))?,
        );
        Self::injective_via(algebra, &op, v)
    }

    /// As [`Self::injective`] with a precomputed opposite algebra.
    pub fn injective_via(algebra: &Alg<F>, opposite: &Alg<F>, v: usize) -> Result<Self, RepError> {
        Representation::projective(opposite, v)?.dual(algebra)
    }

    /// Vector space dual, a module over `target`, which must be the opposite
    /// presentation. Dimensions are kept and every arrow matrix is transposed.
    pub fn dual(&self, target: &Alg<F>) -> Result<Self, RepError> {
        if *target.quiver() != self.algebra.quiver().opposite() {
            return Err(RepError::NotOpposite);
        }
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Ok(Self::from_parts(target.clone(), self.dims.clone(), maps))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(RepError::AlgebraMismatch);
        }
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(Self::from_parts(self.algebra.clone(), dims, maps))
    }

    pub fn direct_sum_all(algebra: &Alg<F>, parts: &[Self]) -> Result<Self, RepError> {
        parts
            .iter()
            .try_fold(Self::zero(algebra), |acc, p| acc.direct_sum(p))
    }

    /// `M * rad A`: at vertex `j` the span of the images of all arrows into `j`.
    pub fn radical_spaces(&self) -> Submodule<F> {
        let f = self.field();
        let q = self.algebra.quiver();
        let spaces = (0..self.algebra.num_vertices())
            .map(|j| {
                let mut rows = Matrix::zeros(f, 0, self.dims[j]);
                for a in q.arrows_to(j) {
                    rows = rows.vstack(&self.maps[a]);
                }
                RowSpace::span(&rows)
            })
            .collect();
        Submodule { spaces }
    }

    /// The largest semisimple submodule: vectors killed by every arrow.
    pub fn socle_spaces(&self) -> Submodule<F> {
        let f = self.field();
        let q = self.algebra.quiver();
        let spaces = (0..self.algebra.num_vertices())
            .map(|i| {
                let mut cols = Matrix::zeros(f, self.dims[i], 0);
                for a in q.arrows_from(i) {
                    cols = cols.hstack(&self.maps[a]);
                }
                RowSpace::span(&cols.left_kernel())
            })
            .collect();
        Submodule { spaces }
    }

    /// `M / M rad` with the quotient map.
    pub fn top(&self) -> (Self, ModuleMap<F>) {
        let sub = self.radical_spaces();
        self.quotient(&sub)
    }

    /// `M rad` with its inclusion.
    pub fn radical_submodule(&self) -> (Self, ModuleMap<F>) {
        let sub = self.radical_spaces();
        self.submodule(&sub)
    }

    pub fn socle(&self) -> (Self, ModuleMap<F>) {
        let sub = self.socle_spaces();
        self.submodule(&sub)
    }

    /// `M rad^k`.
    pub fn radical_power(&self, k: usize) -> Submodule<F> {
        let mut sub = Submodule::full(self);
        for _ in 0..k {
            let (inner, inc) = self.submodule(&sub);
            let next = inner.radical_spaces();
            sub = inc.image_of(&next);
        }
        sub
    }

    /// Submodule generated by the given `(vertex, vector)` elements.
    pub fn generated(&self, gens: &[(usize, Vec<F::Elem>)]) -> Submodule<F> {
        let mut sub = Submodule::zero(self);
        sub.close_with(self, gens.to_vec());
        sub
    }

    /// The representation carried by a submodule, with its inclusion.
    pub fn submodule(&self, sub: &Submodule<F>) -> (Self, ModuleMap<F>) {
        let q = self.algebra.quiver();
        let f = self.field();
        let dims: Vec<usize> = sub.spaces.iter().map(RowSpace::dim).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let src = sub.spaces[arrow.source].basis();
                let tgt = &sub.spaces[arrow.target];
                let image = src.mul(&self.maps[a]);
                let rows: Vec<Vec<F::Elem>> = (0..image.rows())
                    .map(|r| {
                        tgt.coords(image.row(r))
                            .expect("submodule is closed under the arrows")
                    })
                    .collect();
                Matrix::from_rows(f, tgt.dim(), &rows)
            })
            .collect();
        let rep = Self::from_parts(self.algebra.clone(), dims, maps);
        let components = sub.spaces.iter().map(|s| s.basis().clone()).collect();
        let inc = ModuleMap::from_parts(rep.clone(), self.clone(), components);
        (rep, inc)
    }

    /// The quotient by a submodule, with the projection.
    pub fn quotient(&self, sub: &Submodule<F>) -> (Self, ModuleMap<F>) {
        let q = self.algebra.quiver();
        let projections: Vec<Matrix<F>> = sub
            .spaces
            .iter()
            .map(RowSpace::quotient_projection)
            .collect();
        let dims: Vec<usize> = projections.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let free = sub.spaces[arrow.source].free_columns();
                self.maps[a]
                    .select_rows(&free)
                    .mul(&projections[arrow.target])
            })
            .collect();
        let rep = Self::from_parts(self.algebra.clone(), dims, maps);
        let proj = ModuleMap::from_parts(self.clone(), rep.clone(), projections);
        (rep, proj)
    }

    pub fn identity_map(&self) -> ModuleMap<F> {
        let f = self.field();
        let components = self.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        ModuleMap::from_parts(self.clone(), self.clone(), components)
    }
}

fn check_vertex<F: Field>(alg: &Alg<F>, v: usize) -> Result<(), RepError> {
    if v < alg.num_vertices() {
        Ok(())
    } else {
        Err(RepError::UnknownVertex(v))
    }
}

/// A submodule given by one subspace per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Submodule<F: Field> {
    pub spaces: Vec<RowSpace<F>>,
}

impl<F: Field> Submodule<F> {
    pub fn zero(m: &Representation<F>) -> Self {
        Submodule {
            spaces: m
                .dims
                .iter()
                .map(|&d| RowSpace::zero(m.field(), d))
                .collect(),
        }
    }

    pub fn full(m: &Representation<F>) -> Self {
        Submodule {
            spaces: m
                .dims
                .iter()
                .map(|&d| RowSpace::full(m.field(), d))
                .collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(RowSpace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(RowSpace::dim).sum()
    }

    pub fn contains(&self, other: &Submodule<F>) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.contains_space(b))
    }

    pub fn sum(&self, other: &Submodule<F>) -> Submodule<F> {
        Submodule {
            spaces: self
                .spaces
                .iter()
                .zip(&other.spaces)
                .map(|(a, b)| a.sum(b))
                .collect(),
        }
    }

    /// Adds elements and closes under the arrow actions of `m`.
    pub fn close_with(&mut self, m: &Representation<F>, mut queue: Vec<(usize, Vec<F::Elem>)>) {
        let q = m.algebra.quiver();
        while let Some((v, x)) = queue.pop() {
            let reduced = self.spaces[v].reduce(&x);
            if reduced.iter().all(|c| m.field().is_zero(c)) {
                continue;
            }
            self.spaces[v].extend(std::slice::from_ref(&reduced));
            for a in q.arrows_from(v) {
                let y = m.maps[a].left_apply(&reduced);
                queue.push((q.arrow(a).target, y));
            }
        }
    }

    /// Whether every arrow of `m` maps the subspaces into each other.
    pub fn is_closed_in(&self, m: &Representation<F>) -> bool {
        m.algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, arrow)| {
                let image = self.spaces[arrow.source].basis().mul(&m.maps[a]);
                (0..image.rows()).all(|r| self.spaces[arrow.target].contains(image.row(r)))
            })
    }
}

/// A degree-zero module homomorphism, one matrix per vertex acting on rows.
#[derive(Clone)]
pub struct ModuleMap<F: Field> {
    domain: Arc<Representation<F>>,
    codomain: Arc<Representation<F>>,
    components: Vec<Matrix<F>>,
}

impl<F: Field> fmt::Debug for ModuleMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMap")
            .field("domain_dims", &self.domain.dims)
            .field("codomain_dims", &self.codomain.dims)
            .field("components", &self.components)
            .finish()
    }
}

impl<F: Field> ModuleMap<F> {
    pub fn from_parts(
        domain: Representation<F>,
        codomain: Representation<F>,
        components: Vec<Matrix<F>>,
    ) -> Self {
        Self::from_shared(Arc::new(domain), Arc::new(codomain), components)
    }

    pub fn from_shared(
        domain: Arc<Representation<F>>,
        codomain: Arc<Representation<F>>,
        components: Vec<Matrix<F>>,
    ) -> Self {
        debug_assert_eq!(components.len(), domain.dims.len());
        ModuleMap {
            domain,
            codomain,
            components,
        }
    }

    /// Builds a map and checks shapes and the commutation constraints.
    pub fn new(
        domain: Representation<F>,
        codomain: Representation<F>,
        components: Vec<Matrix<F>>,
    ) -> Result<Self, RepError> {
        if !same_algebra(&domain.algebra, &codomain.algebra) {
            return Err(RepError::AlgebraMismatch);
        }
        let shapes_ok = components.len() == domain.dims.len()
            && components
                .iter()
                .enumerate()
                .all(|(v, c)| c.rows() == domain.dims[v] && c.cols() == codomain.dims[v]);
        if !shapes_ok {
            return Err(RepError::Invalid("component shapes do not match".into()));
        }
        let map = Self::from_parts(domain, codomain, components);
        if !map.is_homomorphism() {
            return Err(RepError::Invalid(
                "components do not commute with the arrows".into(),
            ));
        }
        Ok(map)
    }

    pub fn zero(domain: &Representation<F>, codomain: &Representation<F>) -> Self {
        let f = domain.field();
        let components = domain
            .dims
            .iter()
            .zip(&codomain.dims)
            .map(|(&a, &b)| Matrix::zeros(f, a, b))
            .collect();
        Self::from_parts(domain.clone(), codomain.clone(), components)
    }

    pub fn domain(&self) -> &Representation<F> {
        &self.domain
    }
    pub fn codomain(&self) -> &Representation<F> {
        &self.codomain
    }
    pub fn shared_domain(&self) -> &Arc<Representation<F>> {
        &self.domain
    }
    pub fn shared_codomain(&self) -> &Arc<Representation<F>> {
        &self.codomain
    }
    pub fn component(&self, v: usize) -> &Matrix<F> {
        &self.components[v]
    }
    pub fn components(&self) -> &[Matrix<F>] {
        &self.components
    }

    /// `(map at i) * N_a == M_a * (map at j)` for every arrow `a: i -> j`.
    pub fn is_homomorphism(&self) -> bool {
        let q = self.domain.algebra.quiver();
        q.arrows().iter().enumerate().all(|(a, arrow)| {
            let left = self.components[arrow.source].mul(&self.codomain.maps[a]);
            let right = self.domain.maps[a].mul(&self.components[arrow.target]);
            left == right
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::rank).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap<F>) -> Result<ModuleMap<F>, RepError> {
        if self.codomain.dims != next.domain.dims {
            return Err(RepError::NotComposable(0));
        }
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(Self::from_shared(
            self.domain.clone(),
            next.codomain.clone(),
            components,
        ))
    }

    pub fn kernel(&self) -> Submodule<F> {
        Submodule {
            spaces: self
                .components
                .iter()
                .map(|c| RowSpace::span(&c.left_kernel()))
                .collect(),
        }
    }

    pub fn image(&self) -> Submodule<F> {
        Submodule {
            spaces: self.components.iter().map(RowSpace::span).collect(),
        }
    }

    /// Image of a submodule of the domain.
    pub fn image_of(&self, sub: &Submodule<F>) -> Submodule<F> {
        Submodule {
            spaces: sub
                .spaces
                .iter()
                .zip(&self.components)
                .map(|(s, c)| RowSpace::span(&s.basis().mul(c)))
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.cols())
    }

    /// The contravariant dual `D(N) -> D(M)`, given the dual modules' algebra.
    pub fn dual(&self, target: &Alg<F>) -> Result<ModuleMap<F>, RepError> {
        let dom = self.codomain.dual(target)?;
        let cod = self.domain.dual(target)?;
        let components = self.components.iter().map(Matrix::transpose).collect();
        Ok(Self::from_parts(dom, cod, components))
    }
}

/// A basis of `Hom_A(M, N)`.
#[derive(Debug, Clone)]
pub struct HomSpace<F: Field> {
    pub basis: Vec<ModuleMap<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Layout of the unknowns of a Hom system: one block per vertex.
pub(crate) struct HomLayout {
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl HomLayout {
    pub fn new(m_dims: &[usize], n_dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(m_dims.len());
        let mut total = 0;
        for (a, b) in m_dims.iter().zip(n_dims) {
            offsets.push(total);
            total += a * b;
        }
        HomLayout { offsets, total }
    }
}

/// Solves the commutation system for all module maps `M -> N`.
pub fn hom_space<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<HomSpace<F>, RepError> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(RepError::AlgebraMismatch);
    }
    let f = m.field();
    let q = m.algebra.quiver();
    let layout = HomLayout::new(&m.dims, &n.dims);
    let var = |v: usize, r: usize, c: usize| layout.offsets[v] + r * n.dims[v] + c;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (i, j) = (arrow.source, arrow.target);
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for r in 0..m.dims[i] {
            for c in 0..n.dims[j] {
                let mut row = vec![f.zero(); layout.total];
                // (X_i N_a)[r, c] - (M_a X_j)[r, c]
                for k in 0..n.dims[i] {
                    let coef = na.get(k, c);
                    if !f.is_zero(coef) {
                        let idx = var(i, r, k);
                        row[idx] = f.add(&row[idx], coef);
                    }
                }
                for k in 0..m.dims[j] {
                    let coef = ma.get(r, k);
                    if !f.is_zero(coef) {
                        let idx = var(j, k, c);
                        row[idx] = f.sub(&row[idx], coef);
                    }
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(f, layout.total, &rows);
    let domain = Arc::new(m.clone());
    let codomain = Arc::new(n.clone());
    let basis = system
        .kernel_basis()
        .into_iter()
        .map(|sol| {
            let components = (0..m.dims.len())
                .map(|v| {
                    let start = layout.offsets[v];
                    let len = m.dims[v] * n.dims[v];
                    Matrix::from_vec(f, m.dims[v], n.dims[v], sol[start..start + len].to_vec())
                })
                .collect();
            ModuleMap::from_shared(domain.clone(), codomain.clone(), components)
        })
        .collect();
    Ok(HomSpace { basis })
}

/// Flattens a map's components into one coordinate vector.
pub(crate) fn flatten_map<F: Field>(map: &ModuleMap<F>) -> Vec<F::Elem> {
    map.components
        .iter()
        .flat_map(|c| c.entries().iter().cloned())
        .collect()
}
