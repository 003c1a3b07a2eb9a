//! Cubic 3-D FFTs on row-major `n × n × n` buffers.
//!
//! Transforms are unnormalised in both directions; the scaling lives in
//! `lattice::to_spectral`. Plans are cached per thread.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction))
}

/// In-place 3-D transform. `Forward` uses `e^{-2πi k·j/n}`, `Inverse` uses `e^{+2πi k·j/n}`.
pub fn fft3(data: &mut [Complex64], n: usize, direction: FftDirection) {
    assert_eq!(data.len(), n * n * n, "buffer is not n^3");
    let fft = plan(n, direction);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];

    // Last axis is contiguous: rustfft batches over consecutive chunks.
    fft.process_with_scratch(data, &mut scratch);

    let mut line = vec![Complex64::new(0.0, 0.0); n];
    // Middle axis.
    for i in 0..n {
        let plane = &mut data[i * n * n..(i + 1) * n * n];
        for k in 0..n {
            for j in 0..n {
                line[j] = plane[j * n + k];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for j in 0..n {
                plane[j * n + k] = line[j];
            }
        }
    }
    // First axis.
    let stride = n * n;
    for jk in 0..stride {
        for i in 0..n {
            line[i] = data[i * stride + jk];
        }
        fft.process_with_scratch(&mut line, &mut scratch);
        for i in 0..n {
            data[i * stride + jk] = line[i];
        }
    }
}

/// Index of a signed frequency / grid offset reduced modulo `n`.
#[inline]
pub fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}
