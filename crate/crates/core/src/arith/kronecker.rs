//! The Kronecker symbol `(a/n)`, which realises the quadratic character
//! `χ_d(n) = (d/n)` for a fundamental discriminant `d`.

/// `(a/2)`, indexed by `a mod 8`.
const TWO_TABLE: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// Kronecker symbol `(a/n)` for arbitrary integers.
///
/// `(a/0)` is 1 when `|a| = 1` and 0 otherwise; `(a/-1)` is the sign of `a`
/// (with `(0/-1) = 1`); `(a/2)` follows the usual mod-8 rule.
pub fn kronecker(a: i64, n: i64) -> i8 {
    kronecker_wide(a as i128, n as i128)
}

pub(crate) fn kronecker_wide(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a & 1 == 0 && n & 1 == 0 {
        return 0;
    }
    let mut a = a;
    let mut b = n;
    let v = b.trailing_zeros();
    b >>= v;
    let mut k: i8 = if v.is_multiple_of(2) { 1 } else { TWO_TABLE[(a & 7) as usize] };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // b is now odd and positive; `a & 3`, `a & 7` read residues in two's complement
    loop {
        if a == 0 {
            return if b > 1 { 0 } else { k };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TWO_TABLE[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}
