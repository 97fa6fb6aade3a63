/// The shortest `z` with `w ∈ z*`. The empty word is its own root.
pub fn primitive_root<T: Eq + Clone>(w: &[T]) -> Vec<T> {
    let n = w.len();
    for len in 1..=n {
        if n % len == 0 && w.chunks(len).all(|c| c == &w[..len]) {
            return w[..len].to_vec();
        }
    }
    w.to_vec()
}

/// For nonempty `u` and `v`: a word `z` with `u, v ∈ z*`, namely their
/// common primitive root, if any. When there is none, `(u + v)*` is not
/// bounded.
pub fn common_root<T: Eq + Clone>(u: &[T], v: &[T]) -> Option<Vec<T>> {
    let r = primitive_root(u);
    (r == primitive_root(v)).then_some(r)
}
