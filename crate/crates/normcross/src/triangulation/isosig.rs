//! Isomorphism-signature decoding.
//!
//! A signature is a base-64 string (`a-z A-Z 0-9 + -`).  For each connected
//! component: the tetrahedron count, then one trit per unglued face in
//! traversal order (0 = boundary, 1 = glue to the next unused tetrahedron by
//! the identity, 2 = glue to an already-seen tetrahedron), packed three per
//! character; then the destinations of the type-2 gluings, then their
//! permutations as indices into [`S4`].  Components are concatenated.

use super::{Gluing, Perm4, Triangulation, TriangulationError, S4};

fn char_value(c: u8) -> Option<usize> {
    match c {
        b'a'..=b'z' => Some((c - b'a') as usize),
        b'A'..=b'Z' => Some((c - b'A') as usize + 26),
        b'0'..=b'9' => Some((c - b'0') as usize + 52),
        b'+' => Some(62),
        b'-' => Some(63),
        _ => None,
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn err(&self, what: &str) -> TriangulationError {
        TriangulationError::IsoSig(format!("{what} at position {}", self.pos))
    }

    fn next(&mut self) -> Result<usize, TriangulationError> {
        let c = *self.bytes.get(self.pos).ok_or_else(|| self.err("unexpected end"))?;
        let v = char_value(c).ok_or_else(|| self.err("invalid character"))?;
        self.pos += 1;
        Ok(v)
    }

    /// Little-endian integer spread over `width` characters.
    fn int(&mut self, width: usize) -> Result<usize, TriangulationError> {
        let mut v = 0usize;
        for i in 0..width {
            let digit = self.next()?;
            v |= digit.checked_shl(6 * i as u32).ok_or_else(|| self.err("integer overflow"))?;
        }
        Ok(v)
    }
}

pub(super) fn decode(sig: &str) -> Result<Triangulation, TriangulationError> {
    let mut r = Reader { bytes: sig.as_bytes(), pos: 0 };
    if r.bytes.is_empty() {
        return Err(TriangulationError::IsoSig("empty signature".into()));
    }
    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::new();
    while r.pos < r.bytes.len() {
        decode_component(&mut r, &mut gluings)?;
    }
    Triangulation::new(gluings)
}

fn decode_component(r: &mut Reader<'_>, gluings: &mut Vec<[Option<Gluing>; 4]>) -> Result<(), TriangulationError> {
    let first = r.next()?;
    let (n, width) = if first < 63 {
        (first, 1)
    } else {
        let width = r.next()?;
        if width == 0 {
            return Err(r.err("zero-width size field"));
        }
        (r.int(width)?, width)
    };
    if n == 0 {
        return Ok(());
    }

    let total_faces = 4 * n;
    let mut actions = Vec::new();
    let mut faces_covered = 0usize;
    let mut joins = 0usize;
    while faces_covered < total_faces {
        let packed = r.next()?;
        for k in 0..3 {
            let a = (packed >> (2 * k)) & 3;
            if faces_covered == total_faces {
                if a != 0 {
                    return Err(r.err("nonzero padding trit"));
                }
                continue;
            }
            match a {
                0 => faces_covered += 1,
                1 => faces_covered += 2,
                2 => {
                    faces_covered += 2;
                    joins += 1;
                }
                _ => return Err(r.err("invalid face action")),
            }
            if faces_covered > total_faces {
                return Err(r.err("face actions exceed face count"));
            }
            actions.push(a);
        }
    }
    let dests = (0..joins).map(|_| r.int(width)).collect::<Result<Vec<_>, _>>()?;
    let perms = (0..joins)
        .map(|_| {
            let i = r.next()?;
            S4.get(i).copied().ok_or_else(|| r.err("permutation index out of range"))
        })
        .collect::<Result<Vec<Perm4>, _>>()?;

    let base = gluings.len();
    gluings.extend(std::iter::repeat_n([None; 4], n));
    let mut next_unused = 1usize;
    let mut action_pos = 0usize;
    let mut join_pos = 0usize;
    for t in 0..n {
        for f in 0..4 {
            if gluings[base + t][f].is_some() {
                continue;
            }
            let action = *actions.get(action_pos).ok_or_else(|| r.err("too few face actions"))?;
            action_pos += 1;
            let (target, perm) = match action {
                0 => continue,
                1 => {
                    if next_unused >= n {
                        return Err(r.err("new-tetrahedron gluing past the last tetrahedron"));
                    }
                    next_unused += 1;
                    (next_unused - 1, Perm4::IDENTITY)
                }
                _ => {
                    let d = dests[join_pos];
                    let p = perms[join_pos];
                    join_pos += 1;
                    if d >= next_unused {
                        return Err(r.err("gluing to an unseen tetrahedron"));
                    }
                    (d, p)
                }
            };
            let f2 = perm.apply(f);
            if gluings[base + target][f2].is_some() || (target == t && f2 == f) {
                return Err(r.err("gluing onto an occupied face"));
            }
            gluings[base + t][f] = Some(Gluing { tet: base + target, perm });
            gluings[base + target][f2] = Some(Gluing { tet: base + t, perm: perm.inverse() });
        }
    }
    if action_pos != actions.len() {
        return Err(r.err("unused face actions"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_free_tetrahedron() {
        // one tetrahedron, four boundary trits packed into two characters
        let t = decode("baa").unwrap();
        assert_eq!(t.size(), 1);
        assert!((0..4).all(|f| t.gluing(0, f).is_none()));
    }

    #[test]
    fn rejects_garbage() {
        assert!(decode("b*a").is_err());
        assert!(decode("b").is_err());
        assert!(decode("").is_err());
    }
}
