//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p quiverhom-cli --test acceptance -- --nocapture` to
//! see the report.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiverhom::algebra::{BoundQuiverAlgebra, Relation};
use quiverhom::format::{parse_algebra, parse_module, serialize_algebra, serialize_module};
use quiverhom::homological::{
    bass_findim_zero, build_xi_window, complex_cohomology, lemma23_sequence, minimal_resolution,
    pd, pd_from_ext, projective_cover, GeneratorStrategy, PdVerdict,
};
use quiverhom::linalg::{Field, PrimeField, Rationals};
use quiverhom::quiver::Quiver;
use quiverhom::rep::{Alg, Representation};
use quiverhom::tilde::build_tilde;
use quiverhom_cli::run_command;

const SEED: u64 = 0x5eed_2024;
const PD_CUTOFF: usize = 10;
const FULL_BASIS_CUTOFF: usize = 3;
const XI_WINDOW: usize = 6;
const RANDOM_ALGEBRAS: usize = 100;
const RANDOM_MAX_DIM: usize = 40;
const CORPUS_SIZE: usize = 50;
const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const LEMMA_BUDGET: Duration = Duration::from_secs(1);
const BASS_BUDGET: Duration = Duration::from_secs(30);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn gf() -> PrimeField {
    PrimeField::default()
}

fn example22() -> Alg<PrimeField> {
    Arc::new(parse_algebra(&read("example22.alg"), gf()).unwrap())
}

fn a2() -> Alg<Rationals> {
    Arc::new(parse_algebra(&read("a2.alg"), Rationals).unwrap())
}

fn dual_numbers() -> Alg<Rationals> {
    Arc::new(parse_algebra(&read("dualnumbers.alg"), Rationals).unwrap())
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<Duration, String> {
    let spent = start.elapsed();
    ensure!(spent < budget, "{what} took {spent:?}, budget {budget:?}");
    Ok(spent)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let alg = example22();
    ensure!(alg.dim() == 13, "dim A = {}", alg.dim());
    let projectives = [[3, 1, 0], [1, 2, 0], [3, 1, 2]];
    let injectives = [[3, 1, 3], [1, 2, 1], [0, 0, 2]];
    for v in 0..3 {
        let p = Representation::projective(&alg, v).unwrap();
        let i = Representation::injective(&alg, v).unwrap();
        ensure!(
            p.dims() == projectives[v],
            "e_{}A has dims {:?}",
            v + 1,
            p.dims()
        );
        ensure!(
            i.dims() == injectives[v],
            "I({}) has dims {:?}",
            v + 1,
            i.dims()
        );
    }
    let spent = within(start, GOLDEN_BUDGET, "golden data")?;
    Ok(format!(
        "dim A = 13, projective and injective dims match ({spent:?})"
    ))
}

fn criterion_2() -> Outcome {
    let path = fixture("example22.alg");
    let args = ["quiverhom", "--algebra", path.to_str().unwrap(), "tilde"];
    let (code, text) = run_command(args);
    ensure!(code == 0, "tilde exited with {code}");
    ensure!(
        text == read("example22.tilde.alg"),
        "emitted file differs from the shipped fixture"
    );
    let tilde_alg: Alg<PrimeField> = Arc::new(parse_algebra(&text, gf()).unwrap());
    let q = tilde_alg.quiver();
    ensure!(
        (q.num_vertices(), q.num_arrows(), tilde_alg.dim()) == (6, 12, 22),
        "got {} vertices, {} arrows, dim {}",
        q.num_vertices(),
        q.num_arrows(),
        tilde_alg.dim()
    );
    let base = example22();
    for i in 0..3 {
        let ti = q.vertex(&format!("{}~", i + 1)).unwrap();
        let f = Representation::projective(&tilde_alg, ti).unwrap();
        let mut dims = vec![0; 6];
        dims[i] = 1;
        dims[ti] = 2;
        ensure!(f.dims() == dims, "f_{}Ã has dims {:?}", i + 1, f.dims());
        ensure!(
            f.radical_power(2).total_dim() == 0,
            "rad^2 of f_{}Ã is non-zero",
            i + 1
        );
        let old = Representation::injective(&base, i).unwrap();
        let new = Representation::injective(&tilde_alg, i).unwrap();
        let extra: usize = new.dims()[3..].iter().sum();
        ensure!(
            extra == 1 && new.dims()[..3] == *old.dims(),
            "I_Ã(e_{}) has dims {:?} over {:?}",
            i + 1,
            new.dims(),
            old.dims()
        );
        let fi = Representation::injective(&tilde_alg, ti).unwrap();
        ensure!(
            fi.total_dim() == 2,
            "I_Ã(f_{}) has dim {}",
            i + 1,
            fi.total_dim()
        );
    }
    Ok("6 vertices, 12 arrows, dim 22; f_iÃ, I_Ã(e_i), I_Ã(f_i) as expected".into())
}

fn lemma23_on<F: Field>(alg: Alg<F>, name: &str) -> Result<Duration, String> {
    let start = Instant::now();
    let t = build_tilde(alg.clone()).map_err(|e| e.to_string())?;
    let op = t.opposite().map_err(|e| e.to_string())?;
    for i in 0..alg.num_vertices() {
        let l = lemma23_sequence(&t, &op, i).map_err(|e| e.to_string())?;
        ensure!(
            l.is_exact(),
            "{name}: sequence at vertex {} is not exact",
            i + 1
        );
        let middle: usize = l.middle_dims().iter().sum();
        ensure!(middle == 3, "{name}: middle term has dim {middle}");
    }
    within(start, LEMMA_BUDGET, name)
}

fn criterion_3() -> Outcome {
    let times = [
        lemma23_on(example22(), "example22")?,
        lemma23_on(a2(), "a2")?,
        lemma23_on(dual_numbers(), "dualnumbers")?,
    ];
    Ok(format!(
        "exact with middle dim 3 at every vertex of 3 fixtures ({times:?})"
    ))
}

/// A monomial algebra killing some random paths and every path of length `ell`.
fn random_algebra(rng: &mut ChaCha8Rng) -> Option<Alg<PrimeField>> {
    let f = gf();
    let n = rng.gen_range(1..=4);
    let labels: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..rng.gen_range(0..=6))
        .map(|k| {
            (
                format!("a{k}"),
                labels[rng.gen_range(0..n)].clone(),
                labels[rng.gen_range(0..n)].clone(),
            )
        })
        .collect();
    let q = Quiver::new(&labels, &arrows).ok()?;
    let ell = rng.gen_range(2..=4);
    let paths = q.enumerate_paths(ell);
    let mut relations: Vec<Relation<PrimeField>> = paths
        .iter()
        .filter(|p| p.len() == ell)
        .map(|p| Relation::monomial(&f, p.clone()))
        .collect();
    let shorter: Vec<_> = paths
        .iter()
        .filter(|p| p.len() >= 2 && p.len() < ell)
        .collect();
    if !shorter.is_empty() {
        for _ in 0..rng.gen_range(0..=3) {
            let p = shorter[rng.gen_range(0..shorter.len())];
            relations.push(Relation::monomial(&f, p.clone()));
        }
    }
    let alg = BoundQuiverAlgebra::new(f, q, relations, ell + 1).ok()?;
    (alg.dim() <= RANDOM_MAX_DIM).then(|| Arc::new(alg))
}

fn bass_on_tilde_op<F: Field>(alg: Alg<F>) -> Result<bool, String> {
    let t = build_tilde(alg).map_err(|e| e.to_string())?;
    let op = t.opposite().map_err(|e| e.to_string())?;
    Ok(bass_findim_zero(&op).map_err(|e| e.to_string())?.verdict)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    ensure!(bass_on_tilde_op(example22())?, "example22: verdict false");
    ensure!(bass_on_tilde_op(a2())?, "a2: verdict false");
    ensure!(
        bass_on_tilde_op(dual_numbers())?,
        "dualnumbers: verdict false"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut tested = 0;
    let mut largest = 0;
    while tested < RANDOM_ALGEBRAS {
        let Some(alg) = random_algebra(&mut rng) else {
            continue;
        };
        largest = largest.max(alg.dim());
        let presentation = serialize_algebra(&alg);
        ensure!(bass_on_tilde_op(alg)?, "verdict false for\n{presentation}");
        tested += 1;
    }
    let control = bass_findim_zero(&a2()).map_err(|e| e.to_string())?;
    ensure!(!control.verdict, "a2 itself passes the criterion");
    ensure!(
        control.hom_dims == [2, 0],
        "a2 hom dims {:?}",
        control.hom_dims
    );
    let spent = within(start, BASS_BUDGET, "Bass criterion")?;
    Ok(format!(
        "true on 3 fixtures and {tested} random algebras (max dim {largest}), false on a2 ({spent:?})"
    ))
}

fn xi_on<F: Field>(alg: Alg<F>, name: &str) -> Result<(), String> {
    let t = build_tilde(alg.clone()).map_err(|e| e.to_string())?;
    let op = t.opposite().map_err(|e| e.to_string())?;
    let n = op.num_vertices();
    for i in 0..alg.num_vertices() {
        let ti = t.tilde_vertex(i);
        let c = build_xi_window(&t, &op, i, XI_WINDOW).map_err(|e| e.to_string())?;
        ensure!(c.squares_to_zero(), "{name}: d^2 != 0 at vertex {}", i + 1);
        let h = |d: i64| {
            complex_cohomology(&c, d)
                .map(|r| r.dims().to_vec())
                .map_err(|e| e.to_string())
        };
        let mut expected = vec![0; n];
        expected[i] = 1;
        for m in 1..=4 {
            ensure!(
                h(-m)? == expected,
                "{name}: H^-{m} at vertex {} is {:?}",
                i + 1,
                h(-m)?
            );
        }
        expected[ti] = 1;
        ensure!(
            h(0)? == expected,
            "{name}: H^0 at vertex {} is {:?}",
            i + 1,
            h(0)?
        );
        for d in 1..c.hi {
            ensure!(h(d)?.iter().all(|&x| x == 0), "{name}: H^{d} is non-zero");
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    xi_on(example22(), "example22")?;
    xi_on(a2(), "a2")?;
    xi_on(dual_numbers(), "dualnumbers")?;
    Ok(format!(
        "window {XI_WINDOW}: H^0, H^-1..H^-4 and positive degrees as expected"
    ))
}

/// Simples and every `P(v)/rad^k` up to the Loewy length of `P(v)`.
fn radical_quotients<F: Field>(alg: &Alg<F>) -> Vec<(String, Representation<F>)> {
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        let label = alg.quiver().vertex_label(v);
        out.push((
            format!("S_{label}"),
            Representation::simple(alg, v).unwrap(),
        ));
        let p = Representation::projective(alg, v).unwrap();
        let mut k = 1;
        loop {
            let sub = p.radical_power(k);
            let (m, _) = p.quotient(&sub);
            out.push((format!("P({label})/rad^{k}"), m));
            if sub.total_dim() == 0 {
                break;
            }
            k += 1;
        }
    }
    out
}

fn oracle_on<F: Field>(alg: Alg<F>, name: &str) -> Result<usize, String> {
    let modules = radical_quotients(&alg);
    for (label, m) in &modules {
        let r = minimal_resolution(m, PD_CUTOFF);
        ensure!(
            r.all_exact() && r.all_minimal(),
            "{name} {label}: certificate failed"
        );
        let greedy = pd_from_ext(m, PD_CUTOFF, GeneratorStrategy::Greedy);
        ensure!(
            r.verdict() == greedy,
            "{name} {label}: {} vs oracle {greedy}",
            r.verdict()
        );
        let small = pd(m, FULL_BASIS_CUTOFF);
        let full = pd_from_ext(m, FULL_BASIS_CUTOFF, GeneratorStrategy::FullBasis);
        ensure!(
            small == full,
            "{name} {label}: {small} vs full-basis oracle {full}"
        );
    }
    Ok(modules.len())
}

fn criterion_6() -> Outcome {
    let count = oracle_on(example22(), "example22")?
        + oracle_on(a2(), "a2")?
        + oracle_on(dual_numbers(), "dualnumbers")?;
    Ok(format!(
        "{count} modules agree at cutoff {PD_CUTOFF} (greedy oracle) and {FULL_BASIS_CUTOFF} (full-basis oracle)"
    ))
}

fn criterion_7() -> Outcome {
    let alg = example22();
    let t = build_tilde(alg.clone()).map_err(|e| e.to_string())?;
    let mut verdicts = Vec::new();
    for v in 0..3 {
        let s = Representation::simple(&alg, v).unwrap();
        let base = pd(&s, PD_CUTOFF);
        let inflated = pd(&t.inflate(&s).map_err(|e| e.to_string())?, PD_CUTOFF);
        ensure!(
            base == inflated,
            "S_{}: {base} over A, {inflated} over Ã",
            v + 1
        );
        verdicts.push(base.to_string());
    }
    Ok(format!("verdicts coincide: [{}]", verdicts.join(", ")))
}

fn random_vector<F: Field>(f: &F, len: usize, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    (0..len)
        .map(|_| f.from_i64(rng.gen_range(-3..=3)))
        .collect()
}

/// Submodules generated by random elements of a projective, and the quotients by them.
fn random_corpus<F: Field>(op: &Alg<F>, rng: &mut ChaCha8Rng) -> Vec<Representation<F>> {
    let f = op.field();
    let n = op.num_vertices();
    let mut corpus = Vec::with_capacity(CORPUS_SIZE);
    while corpus.len() < CORPUS_SIZE {
        let v = rng.gen_range(0..n);
        let mut p = Representation::projective(op, v).unwrap();
        if rng.gen_bool(0.3) {
            p = p
                .direct_sum(&Representation::projective(op, rng.gen_range(0..n)).unwrap())
                .unwrap();
        }
        let gens: Vec<(usize, Vec<F::Elem>)> = (0..rng.gen_range(1..=2))
            .filter_map(|_| {
                let w = rng.gen_range(0..n);
                (p.dim_at(w) > 0).then(|| (w, random_vector(f, p.dim_at(w), rng)))
            })
            .collect();
        let sub = p.generated(&gens);
        let m = if corpus.len() % 2 == 0 {
            p.submodule(&sub).0
        } else {
            p.quotient(&sub).0
        };
        if !m.is_zero() {
            corpus.push(m);
        }
    }
    corpus
}

fn findim_zero_on<F: Field>(
    op: Alg<F>,
    name: &str,
    rng: &mut ChaCha8Rng,
) -> Result<(usize, usize), String> {
    let mut projective = 0;
    let mut unbounded = 0;
    for (k, m) in random_corpus(&op, rng).iter().enumerate() {
        match pd(m, PD_CUTOFF) {
            PdVerdict::Finite(0) => {
                let cover = projective_cover(m);
                ensure!(
                    cover.map.kernel().total_dim() == 0,
                    "{name} #{k}: pd 0 with non-zero cover kernel"
                );
                projective += 1;
            }
            PdVerdict::Finite(n) => {
                return Err(format!(
                    "{name} #{k}: module with pd {n} (dims {:?})",
                    m.dims()
                ))
            }
            PdVerdict::AtLeast(_) => unbounded += 1,
            PdVerdict::ZeroModule => {}
        }
    }
    Ok((projective, unbounded))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let op22: Alg<PrimeField> = Arc::new(parse_algebra(&read("example22.op.alg"), gf()).unwrap());
    let tilde_op = |alg: Alg<Rationals>| -> Result<Alg<Rationals>, String> {
        build_tilde(alg)
            .and_then(|t| t.opposite())
            .map_err(|e| e.to_string())
    };
    let counts = [
        findim_zero_on(op22, "example22", &mut rng)?,
        findim_zero_on(tilde_op(a2())?, "a2", &mut rng)?,
        findim_zero_on(tilde_op(dual_numbers())?, "dualnumbers", &mut rng)?,
    ];
    let summary: Vec<String> = counts
        .iter()
        .map(|(p, u)| format!("{p} projective/{u} pd >= {PD_CUTOFF}"))
        .collect();
    Ok(format!(
        "no finite pd above 0 in 3 x {CORPUS_SIZE} modules ({})",
        summary.join("; ")
    ))
}

fn round_trip<F: Field>(alg: &Alg<F>, name: &str) -> Result<(), String> {
    let text = serialize_algebra(alg);
    let back = parse_algebra(&text, alg.field().clone()).map_err(|e| e.to_string())?;
    ensure!(back.basis() == alg.basis(), "{name}: basis changed");
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            ensure!(
                back.product(i, j) == alg.product(i, j),
                "{name}: product {i}*{j} changed"
            );
        }
    }
    ensure!(
        serialize_algebra(&back) == text,
        "{name}: serialisation is not stable"
    );
    for v in 0..alg.num_vertices() {
        for m in [
            Representation::projective(alg, v).unwrap(),
            Representation::injective(alg, v).unwrap(),
        ] {
            let back = parse_module(&serialize_module(&m, None), alg).map_err(|e| e.to_string())?;
            ensure!(back == m, "{name}: module round trip changed a module");
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    round_trip(&example22(), "example22")?;
    round_trip(&a2(), "a2")?;
    round_trip(&dual_numbers(), "dualnumbers")?;
    let op22: Alg<PrimeField> = Arc::new(parse_algebra(&read("example22.op.alg"), gf()).unwrap());
    round_trip(&op22, "example22.op")?;
    let alg = fixture("example22.alg");
    let alg = alg.to_str().unwrap();
    let s1 = fixture("s1.mod");
    let s1 = s1.to_str().unwrap();
    let op = fixture("example22.op.alg");
    let tilde = fixture("example22.tilde.alg");
    let commands: Vec<Vec<&str>> = vec![
        vec!["--algebra", alg, "show"],
        vec!["pd", "--module", s1, "--cutoff", "10"],
        vec!["resolve", "--module", s1, "--cutoff", "10"],
        vec!["ext", "--module", s1, "--vertex", "3", "--max", "6"],
        vec!["--algebra", alg, "lemma23"],
        vec!["--algebra", alg, "xi", "--vertex", "1", "--window", "6"],
        vec!["--algebra", op.to_str().unwrap(), "bass"],
        vec!["--algebra", tilde.to_str().unwrap(), "opposite"],
    ];
    for args in &commands {
        let run = || run_command(std::iter::once("quiverhom").chain(args.iter().copied()));
        let (first, second) = (run(), run());
        ensure!(first.0 == 0, "{args:?} exited with {}", first.0);
        ensure!(first == second, "{args:?} is not deterministic");
    }
    let (_, emitted_op) = run_command([
        "quiverhom",
        "--algebra",
        tilde.to_str().unwrap(),
        "opposite",
    ]);
    ensure!(
        emitted_op == read("example22.op.alg"),
        "opposite differs from the shipped fixture"
    );
    Ok(format!(
        "4 algebras round-trip; {} commands byte-identical across runs",
        commands.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 golden data", criterion_1),
        ("2 tilde construction", criterion_2),
        ("3 short exact sequences", criterion_3),
        ("4 Bass criterion", criterion_4),
        ("5 X_i cohomology", criterion_5),
        ("6 pd oracle", criterion_6),
        ("7 inflation pd", criterion_7),
        ("8 finitistic dimension zero", criterion_8),
        ("9 determinism and round trip", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(reason) => {
                println!("FAIL  criterion {name}: {reason}");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
