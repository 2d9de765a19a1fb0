//! Small special-function kit: unit-ball volumes, integer-order Bessel
//! functions and Gauss–Legendre rules.

use std::f64::consts::PI;

/// Volume of the Euclidean unit ball in `ℝ^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    // ω_0 = 1, ω_1 = 2, ω_d = ω_{d-2} · 2π / d
    let (mut omega, first) = if d % 2 == 0 { (1.0, 2) } else { (2.0, 3) };
    let mut k = first;
    while k <= d {
        omega *= 2.0 * PI / k as f64;
        k += 2;
    }
    omega
}

/// Bessel function of the first kind of integer order, from Bessel's integral
///
/// `J_n(x) = (1/π) ∫_0^π cos(nτ − x sin τ) dτ`.
///
/// The integrand extended to `[0, 2π]` is periodic and entire, so the
/// trapezoid rule converges geometrically once the node count exceeds `|x|`
/// by a margin.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    let nodes = (2.0 * x.abs() + 2.0 * n as f64 + 64.0).ceil() as usize;
    let step = 2.0 * PI / nodes as f64;
    let nf = n as f64;
    let mut acc = 0.0;
    for k in 0..nodes {
        let tau = k as f64 * step;
        acc += (nf * tau - x * tau.sin()).cos();
    }
    acc / nodes as f64
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, refined by Newton on P_n.
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// `sin(x)/x` with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}
