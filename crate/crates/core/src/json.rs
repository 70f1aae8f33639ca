//! Serde helpers that write complex numbers as `{"re": .., "im": ..}`.

use num_complex::Complex64;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::Serializer;

pub fn complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

struct Wrap<'a>(&'a Complex64);

impl serde::Serialize for Wrap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        complex(self.0, s)
    }
}

struct Row<'a>(&'a [Complex64]);

impl serde::Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for z in self.0 {
            seq.serialize_element(&Wrap(z))?;
        }
        seq.end()
    }
}

pub fn complex_matrix<S: Serializer>(m: &[Vec<Complex64>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        seq.serialize_element(&Row(row))?;
    }
    seq.end()
}

pub fn display<T: std::fmt::Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn display_seq<T: std::fmt::Display, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
