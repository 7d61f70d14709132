//! The defaults table: every suite, its parameters and their default values.

pub struct Param {
    pub key: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

pub struct Suite {
    pub id: &'static str,
    pub about: &'static str,
    pub params: &'static [Param],
}

macro_rules! p {
    ($k:expr, $d:expr, $doc:expr) => {
        Param { key: $k, default: $d, doc: $doc }
    };
}

pub const SUITES: &[Suite] = &[
    Suite {
        id: "thm1-bound",
        about: "upper bound 2*ceil(log_a(a/(a-1)))+3 for h(L_2(a)), and window maxima below it",
        params: &[
            p!("alphas", "2,3,phi,3/2", "bases for the bound"),
            p!("expected", "5,5,7,9", "expected bound per base"),
            p!("consistency-alphas", "2,3/2,5/4", "bases searched in exponent windows"),
            p!("consistency-hi", "6,6,5", "largest exponent per searched base"),
        ],
    },
    Suite {
        id: "explat-window",
        about: "maximum empty subsets of L_2(2) and L_2(phi) in exponent windows; empty pentagon shapes",
        params: &[
            p!("alpha", "2", "base of the first search"),
            p!("hi", "6", "exponent window [0,hi]^2 for the first search"),
            p!("expected", "5", "expected maximum for the first search"),
            p!("golden-hi", "7", "exponent window [0,hi]^2 for phi"),
            p!("golden-expected", "7", "expected maximum for phi"),
            p!("cap", "12", "size cap"),
        ],
    },
    Suite {
        id: "thm2-hyperbola",
        about: "lattice points on prod x_i = a^k form an empty set of binomial(k+d-1, d-1) points",
        params: &[
            p!("instances", "101/100:2:10,2:2:2,5/4:3:2", "alpha:d:k triples"),
            p!("alpha", "", "single instance base (with d and k)"),
            p!("d", "", "single instance dimension"),
            p!("k", "", "single instance level"),
            p!("search-max-points", "30", "run a window search when the exponent window has at most this many points"),
        ],
    },
    Suite {
        id: "fib-syndetic",
        about: "Fibonacci polygon identities in Q(sqrt 5) and the 2-syndetic set A with an empty prefix hull",
        params: &[
            p!("imax", "20", "check identities for i = 1..imax"),
            p!("n", "6", "prefix length for the set A"),
        ],
    },
    Suite {
        id: "thm3-pigeonhole",
        about: "residue pigeonhole step for S + mZ: exhaustive over u in S^d, w in (Z/m)^d",
        params: &[
            p!("mmax", "7", "all primes m up to this"),
            p!("dmax", "3", "all dimensions up to this"),
        ],
    },
    Suite {
        id: "prop-mod3",
        about: "the 8-vertex empty octagon in ({0,1}+3Z)^2 and the residue (0,0) multiplicity bound",
        params: &[
            p!("window", "-1..8", "square window for the searches"),
            p!("cap", "12", "size cap"),
        ],
    },
    Suite {
        id: "hol-cross",
        about: "hollow simplicial cross polytopes with 2d vertices",
        params: &[p!("dmin", "2", "smallest dimension"), p!("dmax", "6", "largest dimension")],
    },
    Suite {
        id: "hol-reduction",
        about: "hollow simplicial lattice polytopes reduce to empty ones with the same vertex count",
        params: &[
            p!("count", "200", "number of random polytopes, split evenly over dims"),
            p!("dims", "2,3", "dimensions"),
            p!("range", "4", "vertices lie in [-range, range]^d"),
            p!("seed", "20240611", "ChaCha8 seed"),
        ],
    },
    Suite {
        id: "seg-box",
        about: "[1,k]^d holds k^d lattice points and no lattice segment longer than k-1",
        params: &[p!("kmax", "5", "largest k"), p!("dmax", "3", "largest d")],
    },
    Suite {
        id: "seg-ball",
        about: "lattice balls of diameter k-1: segment bound and vertex growth about k^(2/3)",
        params: &[
            p!("ks", "5,9,17,33,65", "k values for the segment bound"),
            p!("slope-ks", "17,33,65,129", "k values for the log-log fit"),
            p!("slope-min", "0.47", "lower end of the accepted slope"),
            p!("slope-max", "0.87", "upper end of the accepted slope"),
        ],
    },
    Suite {
        id: "width-simplex",
        about: "conv(0, d e_1, ..., d e_d) is hollow with lattice width d",
        params: &[p!("ds", "2,3,4", "dimensions"), p!("radius", "2", "direction search radius")],
    },
];

pub fn suite(id: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}

pub const CONSTRUCTIONS: &[(&str, &str)] = &[
    ("hyperbola", "--alpha A --d D --k K"),
    ("fibonacci-polygon", "--n N"),
    ("fibonacci-syndetic", "--n N"),
    ("mod3-octagon", ""),
    ("hollow-cross", "--d D"),
    ("box", "--k K --d D"),
    ("ball", "--k K --d D"),
    ("dilated-simplex", "--d D"),
];

pub const ANALYSES: &[(&str, &str)] = &[
    ("empty", "[--lattice L] POINTS"),
    ("hollow", "[--lattice L] POLYTOPE"),
    ("points", "[--lattice L] POLYTOPE"),
    ("reduce", "POLYTOPE"),
    ("width", "[--radius R] POLYTOPE"),
    ("dirwidth", "--direction v1,v2,... POLYTOPE"),
    ("segment", "POLYTOPE"),
];

pub const DEFAULT_WIDTH_RADIUS: u32 = 5;
