use std::fmt;

use crate::linalg::Field;
use crate::rep::{ModuleMap, Representation, Submodule};

/// A projective module `⊕ e_v A^{m_v}` mapping onto a module.
#[derive(Debug, Clone)]
pub struct Cover<F: Field> {
    pub projective: Representation<F>,
    /// Multiplicity of each indecomposable projective.
    pub multiplicities: Vec<usize>,
    /// Image of each summand's generator, in summand order.
    pub generators: Vec<(usize, Vec<F::Elem>)>,
    pub map: ModuleMap<F>,
}

/// The free module on `gens` with its evaluation map into `m`.
///
/// Summands appear in the order of `gens`; inside a summand the basis at each
/// vertex is the projective's path basis.
pub fn cover_from_generators<F: Field>(
    m: &Representation<F>,
    gens: Vec<(usize, Vec<F::Elem>)>,
) -> Cover<F> {
    let alg = m.algebra();
    let f = m.field();
    let n = alg.num_vertices();
    let projectives: Vec<Representation<F>> = (0..n)
        .map(|v| Representation::projective(alg, v).expect("vertex in range"))
        .collect();
    let parts: Vec<Representation<F>> = gens.iter().map(|(v, _)| projectives[*v].clone()).collect();
    let projective = Representation::direct_sum_all(alg, &parts).expect("same algebra");
    let mut multiplicities = vec![0; n];
    for (v, _) in &gens {
        multiplicities[*v] += 1;
    }
    let components = (0..n)
        .map(|w| {
            let mut rows = Vec::with_capacity(projective.dim_at(w));
            for (v, x) in &gens {
                for i in alg.basis_between(*v, w) {
                    rows.push(m.act(x, &alg.basis()[i]));
                }
            }
            crate::linalg::Matrix::from_rows(f, m.dim_at(w), &rows)
        })
        .collect();
    let map = ModuleMap::from_parts(projective.clone(), m.clone(), components);
    Cover {
        projective,
        multiplicities,
        generators: gens,
        map,
    }
}

/// Unit vectors spanning a complement of `M rad`, vertex by vertex.
fn top_generators<F: Field>(m: &Representation<F>) -> Vec<(usize, Vec<F::Elem>)> {
    let f = m.field();
    let rad = m.radical_spaces();
    let mut gens = Vec::new();
    for (v, space) in rad.spaces.iter().enumerate() {
        for c in space.free_columns() {
            let mut x = vec![f.zero(); m.dim_at(v)];
            x[c] = f.one();
            gens.push((v, x));
        }
    }
    gens
}

/// Projective cover: one summand `e_v A` per basis vector of the top at `v`.
pub fn projective_cover<F: Field>(m: &Representation<F>) -> Cover<F> {
    cover_from_generators(m, top_generators(m))
}

/// The kernel of the projective cover, with its inclusion into the cover.
pub fn syzygy<F: Field>(m: &Representation<F>) -> (Representation<F>, ModuleMap<F>) {
    let cover = projective_cover(m);
    let kernel = cover.map.kernel();
    cover.projective.submodule(&kernel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// The last recorded syzygy vanished; the projective dimension is `n`.
    Finite(usize),
    /// After `n` covers the syzygy `Ω^n` is still non-zero, so `pd >= n`.
    AtLeastCutoff(usize),
}

/// Projective dimension evidence with an explicit cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PdVerdict {
    /// The zero module, excluded from every supremum.
    ZeroModule,
    Finite(usize),
    AtLeast(usize),
}

impl fmt::Display for PdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdVerdict::ZeroModule => write!(f, "-inf (zero module)"),
            PdVerdict::Finite(n) => write!(f, "{n}"),
            PdVerdict::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResolutionStep<F: Field> {
    pub multiplicities: Vec<usize>,
    pub projective: Representation<F>,
    /// `P_0 -> M` for the first step, `P_k -> P_{k-1}` afterwards.
    pub differential: ModuleMap<F>,
    /// Dimension vector of the kernel of this step's differential.
    pub syzygy_dims: Vec<usize>,
    /// The image of the next differential equals this kernel.
    pub exact: bool,
    /// The kernel lies in `P_k rad`.
    pub minimal: bool,
}

#[derive(Debug, Clone)]
pub struct ResolutionReport<F: Field> {
    pub module: Representation<F>,
    pub steps: Vec<ResolutionStep<F>>,
    pub termination: Termination,
}

impl<F: Field> ResolutionReport<F> {
    pub fn verdict(&self) -> PdVerdict {
        if self.module.is_zero() {
            return PdVerdict::ZeroModule;
        }
        match self.termination {
            Termination::Finite(n) => PdVerdict::Finite(n),
            Termination::AtLeastCutoff(n) => PdVerdict::AtLeast(n),
        }
    }

    pub fn all_exact(&self) -> bool {
        self.steps.iter().all(|s| s.exact)
    }

    pub fn all_minimal(&self) -> bool {
        self.steps.iter().all(|s| s.minimal)
    }
}

/// Minimal projective resolution, stopping when a syzygy vanishes or after
/// `cutoff` covers.
pub fn minimal_resolution<F: Field>(m: &Representation<F>, cutoff: usize) -> ResolutionReport<F> {
    let mut steps: Vec<ResolutionStep<F>> = Vec::new();
    if m.is_zero() {
        return ResolutionReport {
            module: m.clone(),
            steps,
            termination: Termination::Finite(0),
        };
    }
    let mut current = m.clone();
    // inclusion of `current` into the previous projective
    let mut inclusion: Option<ModuleMap<F>> = None;
    let mut termination = Termination::AtLeastCutoff(cutoff);
    let mut surjective = true;
    for k in 0..cutoff {
        let cover = projective_cover(&current);
        surjective &= cover.map.is_surjective();
        let kernel = cover.map.kernel();
        let minimal = cover.projective.radical_spaces().contains(&kernel);
        let differential = match &inclusion {
            Some(inc) => cover.map.then(inc).expect("composable"),
            None => cover.map.clone(),
        };
        let done = kernel.total_dim() == 0;
        steps.push(ResolutionStep {
            multiplicities: cover.multiplicities.clone(),
            projective: cover.projective.clone(),
            differential,
            syzygy_dims: kernel.dims(),
            exact: false,
            minimal,
        });
        if done {
            termination = Termination::Finite(k);
            break;
        }
        let (next, inc) = cover.projective.submodule(&kernel);
        current = next;
        inclusion = Some(inc);
    }
    // ker d_k = im d_{k+1}; the last kernel is zero or is the uncovered syzygy
    let kernels: Vec<Submodule<F>> = steps.iter().map(|s| s.differential.kernel()).collect();
    for k in 0..steps.len() {
        steps[k].exact = surjective
            && match steps.get(k + 1) {
                Some(next) => next.differential.image() == kernels[k],
                None => kernels[k].dims() == current_dims(&termination, &current),
            };
    }
    ResolutionReport {
        module: m.clone(),
        steps,
        termination,
    }
}

fn current_dims<F: Field>(t: &Termination, current: &Representation<F>) -> Vec<usize> {
    match t {
        Termination::Finite(_) => vec![0; current.dims().len()],
        Termination::AtLeastCutoff(_) => current.dims().to_vec(),
    }
}

pub fn pd<F: Field>(m: &Representation<F>, cutoff: usize) -> PdVerdict {
    minimal_resolution(m, cutoff).verdict()
}

/// Largest finite projective dimension in a collection, if any module has one.
pub fn finitistic_supremum<F: Field>(
    modules: &[Representation<F>],
    cutoff: usize,
) -> Option<usize> {
    modules
        .iter()
        .filter_map(|m| match pd(m, cutoff) {
            PdVerdict::Finite(n) => Some(n),
            _ => None,
        })
        .max()
}
