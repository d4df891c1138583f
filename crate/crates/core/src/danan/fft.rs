//! Iterative radix-2 Cooley–Tukey transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{MziError, Result};

/// In-place forward DFT, `X_k = Σ_n x_n e^{−2πikn/N}`.
pub fn fft_in_place(data: &mut [Complex64]) -> Result<()> {
    let n = data.len();
    if !n.is_power_of_two() {
        return Err(MziError::NotPowerOfTwo(n));
    }
    if n == 1 {
        return Ok(());
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let step = Complex64::from_polar(1.0, -2.0 * PI / len as f64);
        for start in (0..n).step_by(len) {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let even = data[start + k];
                let odd = data[start + k + len / 2] * w;
                data[start + k] = even + odd;
                data[start + k + len / 2] = even - odd;
                w *= step;
            }
        }
        len <<= 1;
    }
    Ok(())
}

pub fn fft_real(series: &[f64]) -> Result<Vec<Complex64>> {
    let mut data: Vec<Complex64> = series.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft_in_place(&mut data)?;
    Ok(data)
}
