use crate::algebra::{mat2_mul, sigma_minus, sigma_plus, Matrix2};
use crate::{DecoherenceRates, HermitianOperator2};

/// `γ+ 𝓛+[X] + γ- 𝓛-[X] + γ3 𝓛3[X]` with
/// `𝓛±[X] = σ± X σ∓ - ½{σ∓σ±, X}` and `𝓛3[X] = ¼(σ3 X σ3 - X)`.
pub fn generator_action(rates: &DecoherenceRates, x: &HermitianOperator2) -> HermitianOperator2 {
    let (sp, sm) = (sigma_plus(), sigma_minus());
    let lplus = dissipator(&sp, &sm, x);
    let lminus = dissipator(&sm, &sp, x);
    let s3 = HermitianOperator2::sigma3();
    let sxs = HermitianOperator2::hermitize(mat2_mul(&mat2_mul(s3.entries(), x.entries()), s3.entries()));
    let l3 = (sxs - *x) * 0.25;
    lplus * rates.gamma_plus + lminus * rates.gamma_minus + l3 * rates.gamma3
}

/// `a X b - ½{b a, X}` where `b = a†`.
fn dissipator(a: &Matrix2, b: &Matrix2, x: &HermitianOperator2) -> HermitianOperator2 {
    let jump = mat2_mul(&mat2_mul(a, x.entries()), b);
    let ba = mat2_mul(b, a);
    let left = mat2_mul(&ba, x.entries());
    let right = mat2_mul(x.entries(), &ba);
    let mut out = jump;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] -= (left[i][j] + right[i][j]) * 0.5;
        }
    }
    HermitianOperator2::hermitize(out)
}
