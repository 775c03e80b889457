//! Minimal complex 2x2 and statevector helpers for the brute-force oracle.

use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn mat2_identity() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn mat2_add(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

pub fn mat2_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

pub fn mat2_scale(a: &Mat2, s: Complex64) -> Mat2 {
    [
        [a[0][0] * s, a[0][1] * s],
        [a[1][0] * s, a[1][1] * s],
    ]
}

pub fn mat2_max_abs(a: &Mat2) -> f64 {
    a.iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Outer product `v v†` of a single-qubit ket.
pub fn outer(v: [Complex64; 2]) -> Mat2 {
    [
        [v[0] * v[0].conj(), v[0] * v[1].conj()],
        [v[1] * v[0].conj(), v[1] * v[1].conj()],
    ]
}

/// Applies a 2x2 operator to one qubit of an n-qubit statevector.
///
/// Basis ordering is big-endian: qubit 1 is the most significant bit of the
/// amplitude index. `qubit` is 1-based.
pub fn apply_single_qubit(state: &mut [Complex64], n: usize, qubit: usize, m: &Mat2) {
    debug_assert!(qubit >= 1 && qubit <= n);
    debug_assert_eq!(state.len(), 1 << n);
    let stride = 1usize << (n - qubit);
    let mut base = 0;
    while base < state.len() {
        for offset in 0..stride {
            let i = base + offset;
            let j = i + stride;
            let (a, b) = (state[i], state[j]);
            state[i] = m[0][0] * a + m[0][1] * b;
            state[j] = m[1][0] * a + m[1][1] * b;
        }
        base += 2 * stride;
    }
}

/// Relabels the qubits of a statevector: output qubit `k` is input qubit
/// `perm[k-1]` (1-based entries; `perm` must be a permutation of `1..=n`).
pub fn permute_qubits(state: &[Complex64], n: usize, perm: &[usize]) -> Vec<Complex64> {
    debug_assert_eq!(state.len(), 1 << n);
    debug_assert_eq!(perm.len(), n);
    let mut out = vec![ZERO; state.len()];
    for (idx, &amp) in state.iter().enumerate() {
        let mut target = 0usize;
        for (k, &src) in perm.iter().enumerate() {
            let bit = (idx >> (n - src)) & 1;
            target |= bit << (n - 1 - k);
        }
        out[target] = amp;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_apply_matches_direct_matvec() {
        let m: Mat2 = [
            [Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)],
            [Complex64::new(0.5, -0.5), Complex64::new(0.0, 0.0)],
        ];
        // |10> on two qubits; qubit 1 is the high bit.
        let mut state = vec![ZERO; 4];
        state[2] = ONE;
        apply_single_qubit(&mut state, 2, 1, &m);
        assert_eq!(state[0], m[0][1]);
        assert_eq!(state[2], m[1][1]);
        assert_eq!(state[1], ZERO);
        assert_eq!(state[3], ZERO);
    }

    #[test]
    fn permutation_swaps_bit_positions() {
        // |01> with qubits swapped becomes |10>.
        let mut state = vec![ZERO; 4];
        state[1] = ONE;
        let swapped = permute_qubits(&state, 2, &[2, 1]);
        assert_eq!(swapped[2], ONE);
        assert_eq!(swapped[1], ZERO);
    }
}
