//! Named diagrams used across tests and documentation.

use crate::diagram::{parse_link, parse_spine, LinkDiagram, SpineDiagram};

impl LinkDiagram {
    /// Crossing-free round circle.
    pub fn unknot() -> LinkDiagram {
        parse_link("link n=1\nloop 1: 1\n").unwrap()
    }

    /// One-crossing unknot; `sign` picks the kink's writhe.
    pub fn kink(sign: crate::diagram::Sign) -> LinkDiagram {
        let text = match sign {
            crate::diagram::Sign::Positive => "link n=1\nloop 1: 1 2\nX 1 1 1 2 2 over=2\n",
            crate::diagram::Sign::Negative => "link n=1\nloop 1: 1 2\nX 1 1 2 2 1 over=2\n",
        };
        parse_link(text).unwrap()
    }

    pub fn unlink(n: usize) -> LinkDiagram {
        let mut text = format!("link n={n}\n");
        for i in 1..=n {
            text.push_str(&format!("loop {i}: {i}\n"));
        }
        parse_link(&text).unwrap()
    }

    /// Right-handed trefoil, writhe +3.
    pub fn trefoil() -> LinkDiagram {
        parse_link(
            "link n=1\n\
             loop 1: 1 2 3 4 5 6\n\
             X 1 1 5 2 4 over=4\n\
             X 2 3 1 4 6 over=6\n\
             X 3 5 3 6 2 over=2\n",
        )
        .unwrap()
    }

    /// Hopf link with linking number +1.
    pub fn hopf() -> LinkDiagram {
        parse_link(
            "link n=2\n\
             loop 1: 1 2\n\
             loop 2: 3 4\n\
             X 1 4 1 3 2 over=2\n\
             X 2 1 4 2 3 over=3\n",
        )
        .unwrap()
    }

    /// Figure-eight knot, writhe 0.
    pub fn figure_eight() -> LinkDiagram {
        parse_link(
            "link n=1\n\
             loop 1: 1 2 3 4 5 6 7 8\n\
             X 1 4 2 5 1 over=1\n\
             X 2 8 6 1 5 over=5\n\
             X 3 6 3 7 4 over=3\n\
             X 4 2 7 3 8 over=7\n",
        )
        .unwrap()
    }

    /// Whitehead link: linking number zero with four signed crossings
    /// cancelling in pairs, plus one clasp self-crossing.
    pub fn whitehead() -> LinkDiagram {
        parse_link(
            "link n=2\n\
             loop 1: 1 2 3 4\n\
             loop 2: 5 6 7 8 9 10\n\
             X 1 5 4 6 1 over=4\n\
             X 2 6 4 7 3 over=3\n\
             X 3 2 8 3 7 over=7\n\
             X 4 1 8 2 9 over=8\n\
             X 5 9 10 10 5 over=10\n",
        )
        .unwrap()
    }
}

impl SpineDiagram {
    /// Genus-1 spine whose loop is a right-handed trefoil.
    pub fn trefoil_spine() -> SpineDiagram {
        parse_spine(
            "spine g=1\n\
             loop 1: 7 1 2 3 4 5 6\n\
             arc 1: 8\n\
             wedge: 8\n\
             X 1 1 5 2 4 over=4\n\
             X 2 3 1 4 7 over=7\n\
             X 3 5 3 6 2 over=2\n",
        )
        .unwrap()
    }

    /// Genus-2 spine whose loops form a positive Hopf link.
    pub fn hopf_spine() -> SpineDiagram {
        parse_spine(
            "spine g=2\n\
             loop 1: 5 2 1\n\
             loop 2: 6 3 4\n\
             arc 1: 7\n\
             arc 2: 8\n\
             wedge: 7 8\n\
             X 1 6 1 3 2 over=2\n\
             X 2 5 4 2 3 over=3\n",
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate_link, validate_spine, Sign};

    #[test]
    fn unknot_zero_crossings() {
        let d = LinkDiagram::unknot();
        let r = validate_link(&d);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(r.faces, Some(2));
    }

    #[test]
    fn kinks() {
        for (s, w) in [(Sign::Positive, 1), (Sign::Negative, -1)] {
            let d = LinkDiagram::kink(s);
            let r = validate_link(&d);
            assert!(r.ok(), "{s:?}: {:?}", r.issues);
            assert_eq!(r.faces, Some(3));
            assert_eq!(d.writhe(0).unwrap(), w);
        }
    }

    #[test]
    fn trefoil_faces_and_writhe() {
        let d = LinkDiagram::trefoil();
        let r = validate_link(&d);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(r.faces, Some(5));
        assert_eq!(d.writhe(0).unwrap(), 3);
    }

    #[test]
    fn hopf_faces() {
        let d = LinkDiagram::hopf();
        let r = validate_link(&d);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(r.faces, Some(4));
        assert_eq!(d.writhe(0).unwrap(), 0);
    }

    #[test]
    fn figure_eight_faces_and_writhe() {
        let d = LinkDiagram::figure_eight();
        let r = validate_link(&d);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(r.faces, Some(6));
        assert_eq!(d.writhe(0).unwrap(), 0);
    }

    #[test]
    fn whitehead_valid() {
        let d = LinkDiagram::whitehead();
        let r = validate_link(&d);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(r.faces, Some(7));
    }

    #[test]
    fn unlink_regions() {
        let d = LinkDiagram::unlink(3);
        let r = validate_link(&d);
        assert!(r.ok());
        assert_eq!(r.faces, Some(4));
    }

    #[test]
    fn standard_spines() {
        for g in 1..=4 {
            let sp = SpineDiagram::standard(g);
            let r = validate_spine(&sp);
            assert!(r.ok(), "g={g}: {:?}", r.issues);
            assert_eq!(r.normal_form, Some(true));
            assert_eq!(r.faces, Some(g + 1));
            assert!(sp.is_standard_layout());
        }
    }

    #[test]
    fn trefoil_spine_valid() {
        let sp = SpineDiagram::trefoil_spine();
        let r = validate_spine(&sp);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(r.normal_form, Some(true));
        assert_eq!(sp.writhe(0).unwrap(), 3);
    }

    #[test]
    fn hopf_spine_valid() {
        let sp = SpineDiagram::hopf_spine();
        let r = validate_spine(&sp);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(r.normal_form, Some(true));
    }

    #[test]
    fn loops_as_link_of_trefoil_spine() {
        let link = SpineDiagram::trefoil_spine().loops_as_link();
        let r = validate_link(&link);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(link.crossings.len(), 3);
        assert_eq!(link.writhe(0).unwrap(), 3);
    }

    #[test]
    fn roundtrip_is_identity() {
        for text in [
            LinkDiagram::trefoil().to_string(),
            LinkDiagram::whitehead().to_string(),
            SpineDiagram::hopf_spine().to_string(),
            SpineDiagram::standard(3).to_string(),
        ] {
            let again = crate::diagram::parse(&text).unwrap().to_string();
            assert_eq!(text, again);
        }
    }
}
