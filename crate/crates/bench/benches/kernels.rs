use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use wiretap_bench::bench_rng;
use wiretap_core::channels::Bsc;
use wiretap_core::code::{
    exact_equivocation, monte_carlo_equivocation, CosetCode, MlDecoder, WiretapCodeParams,
};
use wiretap_core::info::awgn_mutual_information;
use wiretap_core::lpn::{self, LpnParams};
use wiretap_core::BitMatrix;

fn gf2(c: &mut Criterion) {
    let mut rng = bench_rng("gf2");
    let a = BitMatrix::random(&mut rng, 256, 256);
    let b = BitMatrix::random(&mut rng, 256, 256);
    c.bench_function("rank 256x256", |bench| bench.iter(|| black_box(&a).rank()));
    c.bench_function("mul 256x256", |bench| {
        bench.iter(|| black_box(&a).mul(&b).unwrap())
    });
}

fn coding(c: &mut Criterion) {
    let mut rng = bench_rng("code");
    let params = WiretapCodeParams::new(16, 10, 4, 0.1).unwrap();
    let code = CosetCode::random(&mut rng, &params).unwrap();
    let ch = Bsc::new(0.1).unwrap();
    let s = rng.next_bits(code.msg_len());
    c.bench_function("encode n=16", |bench| {
        bench.iter(|| code.encode(&s, &mut rng).unwrap())
    });
    let decoder = MlDecoder::new(&code).unwrap();
    let y = code.encode(&s, &mut rng).unwrap();
    c.bench_function("ml decode k_fine=10", |bench| {
        bench.iter(|| decoder.decode(black_box(&y)).unwrap())
    });
    c.bench_function("exact equivocation n=16", |bench| {
        bench.iter(|| exact_equivocation(&code, &ch).unwrap())
    });
    c.bench_function("monte carlo equivocation 1000 samples", |bench| {
        bench.iter(|| monte_carlo_equivocation(&code, &ch, 1000, &mut rng).unwrap())
    });
}

fn information(c: &mut Criterion) {
    c.bench_function("awgn mutual information", |bench| {
        bench.iter(|| awgn_mutual_information(black_box(2.0)).unwrap())
    });
}

fn cipher(c: &mut Criterion) {
    let mut rng = bench_rng("lpn");
    let params = LpnParams::toy(0.03).unwrap();
    let key = lpn::keygen(&mut rng, &params).unwrap();
    let a = rng.next_bits(params.l);
    c.bench_function("lpn keygen", |bench| {
        bench.iter(|| lpn::keygen(&mut rng, &params).unwrap())
    });
    let ct = lpn::encrypt(&key, &params, &a, &mut rng).unwrap();
    c.bench_function("lpn encrypt", |bench| {
        bench.iter(|| lpn::encrypt(&key, &params, &a, &mut rng).unwrap())
    });
    c.bench_function("lpn decrypt", |bench| {
        bench.iter(|| lpn::decrypt(&key, &params, &ct).unwrap())
    });
}

criterion_group!(benches, gf2, coding, information, cipher);
criterion_main!(benches);
