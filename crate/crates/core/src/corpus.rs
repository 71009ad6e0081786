//! The bundled algebra files.

use crate::error::{Error, Result};
use crate::format::{parse, Corpus};

pub const BUNDLED: &[(&str, &str)] = &[
    ("kA2", include_str!("../corpus/kA2.alg")),
    ("kA3", include_str!("../corpus/kA3.alg")),
    ("kronecker", include_str!("../corpus/kronecker.alg")),
    ("dual_numbers", include_str!("../corpus/dual_numbers.alg")),
    ("t2_kA2", include_str!("../corpus/t2_kA2.alg")),
];

pub fn source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<Corpus> {
    let text = source(name).ok_or_else(|| Error::InvalidInput(format!("no bundled corpus named {name}")))?;
    parse(text)?.build(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_file_loads_and_round_trips() {
        for (name, text) in BUNDLED {
            let doc = parse(text).unwrap();
            assert_eq!(parse(&doc.to_string()).unwrap(), doc, "{name}");
            load(name).unwrap();
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(load("kA2").unwrap().alg.dim(), 3);
        assert_eq!(load("kA3").unwrap().alg.dim(), 6);
        assert_eq!(load("kronecker").unwrap().alg.dim(), 4);
        assert_eq!(load("dual_numbers").unwrap().alg.dim(), 2);
        assert_eq!(load("t2_kA2").unwrap().alg.dim(), 9);
    }
}
