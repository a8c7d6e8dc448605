use crate::linalg::{Field, Matrix};
use crate::rep::{hom_space, Alg, ModuleMap, RepError, Representation};
use crate::tilde::TildePresentation;

use super::exact::{verify_exact_sequence, ComplexWindow, ExactnessCertificate, ExactnessMode};

/// Position of a basis path inside the vertex-`w` space of `e_v A`.
fn local_index<F: Field>(alg: &Alg<F>, v: usize, w: usize, global: usize) -> usize {
    alg.basis_between(v, w)
        .iter()
        .position(|&i| i == global)
        .expect("path lies in the projective")
}

fn arrow_index<F: Field>(alg: &Alg<F>, a: usize) -> usize {
    let arrow = crate::quiver::Path::arrow(alg.quiver(), a);
    alg.basis_index(&arrow)
        .expect("arrows survive in an admissible quotient")
}

/// The sequence `0 -> S_{e_i} ⊕ S_{f_i} -> f_i Ã -> S_{f_i} -> 0` and its dual
/// `0 -> D S_{f_i} -> D(f_i Ã) -> D S_{e_i} ⊕ D S_{f_i} -> 0` over `Ã^op`.
#[derive(Debug, Clone)]
pub struct Lemma23<F: Field> {
    pub vertex: usize,
    pub tilde_maps: [ModuleMap<F>; 2],
    pub dual_maps: [ModuleMap<F>; 2],
    pub tilde_certificate: ExactnessCertificate,
    pub dual_certificate: ExactnessCertificate,
}

impl<F: Field> Lemma23<F> {
    pub fn is_exact(&self) -> bool {
        self.tilde_certificate.is_exact() && self.dual_certificate.is_exact()
    }

    /// Dimension vector of `D(f_i Ã)`.
    pub fn middle_dims(&self) -> &[usize] {
        self.dual_maps[0].codomain().dims()
    }
}

pub fn lemma23_sequence<F: Field>(
    tilde: &TildePresentation<F>,
    op: &Alg<F>,
    i: usize,
) -> Result<Lemma23<F>, RepError> {
    if i >= tilde.rank() {
        return Err(RepError::UnknownVertex(i));
    }
    let alg = tilde.result();
    let f = alg.field();
    let n = alg.num_vertices();
    let ti = tilde.tilde_vertex(i);
    let p = Representation::projective(alg, ti)?;
    let s_i = Representation::simple(alg, i)?;
    let s_ti = Representation::simple(alg, ti)?;
    let left = s_i.direct_sum(&s_ti)?;

    let u = local_index(alg, ti, i, arrow_index(alg, tilde.connector(i)));
    let x = local_index(alg, ti, ti, arrow_index(alg, tilde.loop_arrow(i)));
    let e = Representation::projective_generator(alg, ti);

    let mut into = Vec::with_capacity(n);
    let mut onto = Vec::with_capacity(n);
    for w in 0..n {
        let mut a = Matrix::zeros(f, left.dim_at(w), p.dim_at(w));
        let mut b = Matrix::zeros(f, p.dim_at(w), s_ti.dim_at(w));
        if w == i {
            a.set(0, u, f.one());
        }
        if w == ti {
            a.set(0, x, f.one());
            b.set(e, 0, f.one());
        }
        into.push(a);
        onto.push(b);
    }
    let first = ModuleMap::new(left, p.clone(), into)?;
    let second = ModuleMap::new(p, s_ti, onto)?;
    let dual_first = second.dual(op)?;
    let dual_second = first.dual(op)?;
    let tilde_certificate =
        verify_exact_sequence(&[first.clone(), second.clone()], ExactnessMode::Bounded)?;
    let dual_certificate = verify_exact_sequence(
        &[dual_first.clone(), dual_second.clone()],
        ExactnessMode::Bounded,
    )?;
    Ok(Lemma23 {
        vertex: i,
        tilde_maps: [first, second],
        dual_maps: [dual_first, dual_second],
        tilde_certificate,
        dual_certificate,
    })
}

/// Left multiplication by `x_i` on `f_i Ã`, a right-module endomorphism.
pub fn loop_multiplication<F: Field>(
    tilde: &TildePresentation<F>,
    i: usize,
) -> Result<ModuleMap<F>, RepError> {
    if i >= tilde.rank() {
        return Err(RepError::UnknownVertex(i));
    }
    let alg = tilde.result();
    let f = alg.field();
    let ti = tilde.tilde_vertex(i);
    let x = tilde.loop_arrow(i);
    let p = Representation::projective(alg, ti)?;
    let components = (0..alg.num_vertices())
        .map(|w| {
            let block = alg.basis_between(ti, w);
            let mut m = Matrix::zeros(f, block.len(), block.len());
            for (r, &path) in block.iter().enumerate() {
                for (k, c) in alg.arrow_times(x, path) {
                    m.set(r, local_index(alg, ti, w, k), c);
                }
            }
            m
        })
        .collect();
    ModuleMap::new(p.clone(), p, components)
}

/// Degrees `-window..=window` of the complex spliced from `D(f_i Ã)` with
/// differential `D(x_i ·)`; zero in positive degrees.
pub fn build_xi_window<F: Field>(
    tilde: &TildePresentation<F>,
    op: &Alg<F>,
    i: usize,
    window: usize,
) -> Result<ComplexWindow<F>, RepError> {
    if window < 2 {
        return Err(RepError::Invalid("window must be at least 2".into()));
    }
    let d = loop_multiplication(tilde, i)?.dual(op)?;
    let injective = d.domain().clone();
    let zero = Representation::zero(op);
    let w = window as i64;
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    for deg in -w..=w {
        terms.push(if deg <= 0 {
            injective.clone()
        } else {
            zero.clone()
        });
        if deg < w {
            differentials.push(if deg < 0 {
                d.clone()
            } else if deg == 0 {
                ModuleMap::zero(&injective, &zero)
            } else {
                ModuleMap::zero(&zero, &zero)
            });
        }
    }
    ComplexWindow::new(-w, terms, differentials)
}

/// Evidence for the finitistic dimension being zero: `Hom(D(Λ), S_v) ≠ 0`
/// for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDimZeroCertificate {
    pub hom_dims: Vec<usize>,
    pub verdict: bool,
}

pub fn bass_findim_zero<F: Field>(alg: &Alg<F>) -> Result<FinDimZeroCertificate, RepError> {
    let n = alg.num_vertices();
    let op = std::sync::Arc::new(
        alg.opposite()
            .map_err(|e| RepError::Invalid(e.to_string()))?,
    );
    let injectives = (0..n)
        .map(|v| Representation::injective_via(alg, &op, v))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Representation::direct_sum_all(alg, &injectives)?;
    let hom_dims = (0..n)
        .map(|v| Ok(hom_space(&d, &Representation::simple(alg, v)?)?.dim()))
        .collect::<Result<Vec<_>, RepError>>()?;
    let verdict = hom_dims.iter().all(|&h| h >= 1);
    Ok(FinDimZeroCertificate { hom_dims, verdict })
}
