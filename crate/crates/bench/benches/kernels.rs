use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rigidcy_core::census::count_dc3_triple;
use rigidcy_core::embedverify::{load_shipped, verify};
use rigidcy_core::numkernel::{q, q_i, q_i_cbrt2, resultant, AlgebraicNumber, Polynomial};
use rigidcy_core::orbifold::report;
use rigidcy_core::profsearch::{exclude_small, search};
use rigidcy_core::ratmap::ramification_profile;

fn field(c: &mut Criterion) {
    let t = q_i_cbrt2();
    let coords = |s: i64| (0..t.degree() as i64).map(|k| q(k * s - 3, k + 1)).collect();
    let a = AlgebraicNumber::new(&t, coords(2)).unwrap();
    let b = AlgebraicNumber::new(&t, coords(-1)).unwrap();
    c.bench_function("tower mul Q(i)(cbrt2)", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("tower inverse Q(i)(cbrt2)", |bn| bn.iter(|| black_box(&a).inv().unwrap()));
}

fn polynomials(c: &mut Criterion) {
    let t = q_i();
    let f = Polynomial::from_ints(&t, &[6, -5, -2, 3, 1, -1, 2]);
    let g = Polynomial::from_ints(&t, &[-4, 0, 7, 1, -3, 1]);
    let h = Polynomial::from_ints(&t, &[1, 2, 1]);
    let (fh, gh) = (&f * &h, &g * &h);
    c.bench_function("gcd over Q(i), degree 8 and 7", |bn| bn.iter(|| Polynomial::gcd(black_box(&fh), black_box(&gh))));
    c.bench_function("resultant over Q(i), degree 6 and 5", |bn| bn.iter(|| resultant(black_box(&f), black_box(&g)).unwrap()));
}

fn maps(c: &mut Criterion) {
    let data = load_shipped("6444").unwrap();
    let xs = data.x_maps().unwrap();
    let branch = data.curve.branch_set();
    c.bench_function("ramification profile 6444", |bn| bn.iter(|| ramification_profile(black_box(&xs), &branch).unwrap()));
    let data = load_shipped("222i").unwrap();
    c.bench_function("verify certificate 222i", |bn| bn.iter(|| verify(black_box(&data))));
}

fn commands(c: &mut Criterion) {
    c.bench_function("orbifold report z7", |bn| bn.iter(|| report("z7").unwrap()));
    c.bench_function("census triple", |bn| bn.iter(count_dc3_triple));
    c.bench_function("exclusion d = 5", |bn| bn.iter(|| exclude_small(5).unwrap()));
    let mut slow = c.benchmark_group("search");
    slow.sample_size(10);
    slow.bench_function("d = 7", |bn| bn.iter(|| search(7).unwrap()));
    slow.finish();
}

criterion_group!(benches, field, polynomials, maps, commands);
criterion_main!(benches);
