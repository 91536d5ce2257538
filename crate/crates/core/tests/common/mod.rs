#![allow(dead_code)]

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sst_core::coin::CoinAssignment;
use sst_core::families::{
    case_circulant, case_double_cone, case_gp, case_k2m, case_octahedron_grover, grover_setup,
    random_instance, random_setup, FamilyCase, RandomInstance,
};
use sst_core::rational::to_f64;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed shared by all sampled tests; overridable through `SST_SEED`.
pub fn seed() -> u64 {
    std::env::var("SST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

/// Writes a result line straight to stderr so it shows without `--nocapture`.
pub fn report(criterion: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "ACCEPTANCE criterion={criterion} status={status} {detail}"
    );
}

pub const K2M_SIZES: [usize; 5] = [1, 2, 3, 5, 8];
pub const CIRCULANTS: [(usize, usize, usize); 4] = [(3, 1, 2), (4, 1, 3), (5, 2, 3), (6, 1, 5)];
pub const GPS: [(usize, usize); 4] = [(1, 3), (2, 4), (3, 5), (4, 6)];
pub const DOUBLE_CONES: [&[usize]; 2] = [&[1, 2], &[1, 1, 3]];

pub fn k2m_cases() -> Vec<FamilyCase> {
    let mut r = rng(1);
    K2M_SIZES
        .iter()
        .flat_map(|&m| (0..3).map(move |_| m))
        .map(|m| case_k2m(m, random_setup(m, &mut r)).unwrap())
        .collect()
}

pub fn circulant_cases() -> Vec<FamilyCase> {
    CIRCULANTS
        .iter()
        .map(|&(m, c, d)| case_circulant(m, c, d).unwrap())
        .collect()
}

/// Grover coins for every instance, plus a rank-2 rational reflection with
/// a 2-dimensional `W` whenever the endpoints have degree at least 2.
pub fn gp_cases() -> Vec<FamilyCase> {
    let mut r = rng(3);
    let mut out = Vec::new();
    for &(k, n) in &GPS {
        out.push(case_gp(k, n, grover_setup(k).unwrap()).unwrap());
        if k >= 2 {
            let setup = loop {
                let s = random_setup(k, &mut r);
                if s.w.len() == 2 && s.coin.rank() == 2 {
                    break s;
                }
            };
            out.push(case_gp(k, n, setup).unwrap());
        }
    }
    out
}

pub fn double_cone_cases() -> Vec<FamilyCase> {
    DOUBLE_CONES
        .iter()
        .map(|q| case_double_cone(q, false).unwrap())
        .collect()
}

pub fn all_family_cases() -> Vec<FamilyCase> {
    let mut v = k2m_cases();
    v.extend(circulant_cases());
    v.extend(gp_cases());
    v.extend(double_cone_cases());
    v.push(case_octahedron_grover().unwrap());
    v
}

pub fn random_suite() -> Vec<RandomInstance> {
    let mut r = rng(6);
    (0..20).map(|_| random_instance(&mut r, 4, 8)).collect()
}

/// Dense `U = RC` built directly from arcs and coin matrices.
pub fn dense_walk(asg: &CoinAssignment) -> DMatrix<Complex64> {
    let g = asg.graph();
    let n = g.arc_count();
    let mut c = DMatrix::<f64>::zeros(n, n);
    let mut r = DMatrix::<f64>::zeros(n, n);
    for u in 0..g.vertex_count() {
        let off = g.arc_offset(u);
        let m = asg.coin(u).matrix();
        for i in 0..g.degree(u) {
            for j in 0..g.degree(u) {
                c[(off + i, off + j)] = to_f64(&m[(i, j)]);
            }
        }
    }
    for (k, (u, v)) in g.arcs().enumerate() {
        let back = g.arc_index(v, u).unwrap();
        r[(back, k)] = 1.0;
    }
    (r * c).map(|x| Complex64::new(x, 0.0))
}

/// Simulated pointwise fidelity for `t` in `1..=t_max` from the dense
/// oracle walk, using the same phase convention as the library.
pub fn dense_fidelities(
    asg: &CoinAssignment,
    a: usize,
    b: usize,
    w: &[Vec<sst_core::rational::Q>],
    t_max: usize,
) -> Vec<f64> {
    let u = dense_walk(asg);
    let g = asg.graph();
    let pairs = sst_core::walk::prepare_pairs(
        g,
        asg,
        a,
        b,
        &sst_core::walk::complex_weights(w).unwrap(),
        None,
    )
    .unwrap();
    let mut images: Vec<_> = pairs.iter().map(|(x, _)| x.clone()).collect();
    let mut out = Vec::with_capacity(t_max);
    for _ in 0..t_max {
        for y in images.iter_mut() {
            *y = &u * &*y;
        }
        out.push(sst_core::walk::pointwise_fidelity(&pairs, &images).value);
    }
    out
}
