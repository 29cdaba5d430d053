use std::ops::Add;

use crate::error::{Error, Result};
use crate::exact::scalar::{Field, Scalar};

/// Full polarization of a form of degree `xs.len()`:
/// `sum over nonempty S of (-1)^(d - |S|) f(sum_{i in S} x_i)`.
/// For `f` homogeneous of degree `d` this equals `d!` times the symmetric
/// multilinear form evaluated at `xs`.
pub fn polarize<S, V, F>(f: F, xs: &[V]) -> Result<S>
where
    S: Scalar,
    V: Clone + Add<Output = V>,
    F: Fn(&V) -> S,
{
    let d = xs.len();
    if d == 0 || d > 4 {
        return Err(Error::DegreeOutOfRange(d));
    }
    let mut total: Option<S> = None;
    for mask in 1u32..(1 << d) {
        let mut sum: Option<V> = None;
        for (i, x) in xs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = Some(match sum {
                    None => x.clone(),
                    Some(s) => s + x.clone(),
                });
            }
        }
        let val = f(&sum.expect("nonempty subset"));
        let negative = (d - mask.count_ones() as usize) % 2 == 1;
        let acc = total.take().unwrap_or_else(|| val.field().zero());
        total = Some(if negative { acc - &val } else { acc + &val });
    }
    Ok(total.expect("at least one subset"))
}
