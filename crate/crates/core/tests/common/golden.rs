//! Published reference values for the layer problem with ε = 2^-20.

#![allow(dead_code)]

/// N = 2^4..2^10.
pub const SIZES: [usize; 7] = [16, 32, 64, 128, 256, 512, 1024];

/// `(error, rate)`; the last row of each series has no rate.
pub type Entry = (f64, Option<f64>);

/// Energy-norm errors on the S mesh, indexed `[k - 1][row]`.
pub const ENERGY_S: [[Entry; 7]; 3] = [
    [
        (1.369e-3, Some(0.970)),
        (6.991e-4, Some(0.859)),
        (3.855e-4, Some(0.832)),
        (2.165e-4, Some(0.829)),
        (1.219e-4, Some(0.838)),
        (6.818e-5, Some(0.851)),
        (3.781e-5, None),
    ],
    [
        (5.940e-4, Some(1.014)),
        (2.942e-4, Some(1.251)),
        (1.236e-4, Some(1.438)),
        (4.562e-5, Some(1.557)),
        (1.550e-5, Some(1.630)),
        (5.008e-6, Some(1.679)),
        (1.564e-6, None),
    ],
    [
        (3.331e-4, Some(1.330)),
        (1.325e-4, Some(1.734)),
        (3.982e-5, Some(2.085)),
        (9.387e-6, Some(2.322)),
        (1.877e-6, Some(2.457)),
        (3.419e-7, Some(2.534)),
        (5.905e-8, None),
    ],
];

/// Energy-norm errors on the PS mesh, indexed `[k - 1][row]`.
pub const ENERGY_PS: [[Entry; 7]; 3] = [
    [
        (8.984e-4, Some(1.660)),
        (2.843e-4, Some(1.327)),
        (1.133e-4, Some(1.065)),
        (5.415e-5, Some(0.972)),
        (2.761e-5, Some(0.952)),
        (1.427e-5, Some(0.951)),
        (7.382e-6, None),
    ],
    [
        (1.489e-4, Some(1.899)),
        (3.994e-5, Some(1.871)),
        (1.092e-5, Some(1.864)),
        (3.000e-6, Some(1.875)),
        (8.179e-7, Some(1.888)),
        (2.210e-7, Some(1.899)),
        (5.927e-8, None),
    ],
    [
        (4.069e-5, Some(2.546)),
        (6.967e-6, Some(2.756)),
        (1.031e-6, Some(2.786)),
        (1.495e-7, Some(2.810)),
        (2.132e-8, Some(2.831)),
        (2.996e-9, Some(2.848)),
        (4.160e-10, None),
    ],
];

/// Energy-norm errors on the BS mesh, indexed `[k - 1][row]`.
pub const ENERGY_BS: [[Entry; 7]; 3] = [
    [
        (9.072e-4, Some(1.670)),
        (2.850e-4, Some(1.372)),
        (1.101e-4, Some(1.131)),
        (5.027e-5, Some(1.034)),
        (2.454e-5, Some(1.007)),
        (1.221e-5, Some(1.001)),
        (6.099e-6, None),
    ],
    [
        (1.493e-4, Some(2.020)),
        (3.680e-5, Some(1.968)),
        (9.407e-6, Some(1.972)),
        (2.398e-6, Some(1.983)),
        (6.065e-7, Some(1.991)),
        (1.526e-7, Some(1.995)),
        (3.827e-8, None),
    ],
    [
        (4.294e-5, Some(2.781)),
        (6.246e-6, Some(2.913)),
        (8.294e-7, Some(2.962)),
        (1.065e-7, Some(2.982)),
        (1.347e-8, Some(2.989)),
        (1.697e-9, Some(2.937)),
        (2.216e-10, None),
    ],
];

/// Energy-norm errors on the MBS mesh, indexed `[k - 1][row]`.
pub const ENERGY_MBS: [[Entry; 7]; 3] = [
    [
        (8.850e-4, Some(1.707)),
        (2.710e-4, Some(1.400)),
        (1.026e-4, Some(1.126)),
        (4.702e-5, Some(1.015)),
        (2.327e-5, Some(0.987)),
        (1.174e-5, Some(0.983)),
        (5.941e-6, None),
    ],
    [
        (1.237e-4, Some(2.075)),
        (2.937e-5, Some(1.942)),
        (7.647e-6, Some(1.926)),
        (2.012e-6, Some(1.938)),
        (5.252e-7, Some(1.950)),
        (1.359e-7, Some(1.960)),
        (3.494e-8, None),
    ],
    [
        (2.874e-5, Some(2.800)),
        (4.125e-6, Some(2.848)),
        (5.729e-7, Some(2.882)),
        (7.771e-8, Some(2.907)),
        (1.036e-8, Some(2.924)),
        (1.365e-9, Some(2.867)),
        (1.871e-10, None),
    ],
];

/// Balanced-norm errors on the S mesh, indexed `[k - 1][row]`.
pub const BALANCED_S: [[Entry; 7]; 3] = [
    [
        (6.967e-1, Some(0.400)),
        (5.279e-1, Some(0.592)),
        (3.502e-1, Some(0.721)),
        (2.125e-1, Some(0.788)),
        (1.230e-1, Some(0.824)),
        (6.950e-2, Some(0.846)),
        (3.866e-2, None),
    ],
    [
        (4.168e-1, Some(0.764)),
        (2.454e-1, Some(1.106)),
        (1.140e-1, Some(1.376)),
        (4.391e-2, Some(1.543)),
        (1.506e-2, Some(1.635)),
        (4.850e-3, Some(1.688)),
        (1.505e-3, None),
    ],
    [
        (2.499e-1, Some(1.124)),
        (1.146e-1, Some(1.608)),
        (3.761e-2, Some(2.019)),
        (9.276e-3, Some(2.291)),
        (1.895e-3, Some(2.444)),
        (3.484e-4, Some(2.529)),
        (6.037e-5, None),
    ],
];

/// Balanced-norm errors on the PS mesh, indexed `[k - 1][row]`.
pub const BALANCED_PS: [[Entry; 7]; 3] = [
    [
        (3.483e-1, Some(0.871)),
        (1.905e-1, Some(0.904)),
        (1.018e-1, Some(0.924)),
        (5.364e-2, Some(0.935)),
        (2.805e-2, Some(0.943)),
        (1.459e-2, Some(0.949)),
        (7.556e-3, None),
    ],
    [
        (1.132e-1, Some(1.683)),
        (3.526e-2, Some(1.793)),
        (1.018e-2, Some(1.842)),
        (2.840e-3, Some(1.869)),
        (7.775e-4, Some(1.886)),
        (2.104e-4, Some(1.898)),
        (5.643e-5, None),
    ],
    [
        (3.728e-2, Some(2.478)),
        (6.693e-3, Some(2.695)),
        (1.033e-3, Some(2.764)),
        (1.521e-4, Some(2.803)),
        (2.179e-5, Some(2.829)),
        (3.066e-6, Some(2.848)),
        (4.260e-7, None),
    ],
];

/// Balanced-norm errors on the BS mesh, indexed `[k - 1][row]`.
pub const BALANCED_BS: [[Entry; 7]; 3] = [
    [
        (3.680e-1, Some(0.931)),
        (1.931e-1, Some(0.973)),
        (9.834e-2, Some(0.988)),
        (4.959e-2, Some(0.994)),
        (2.489e-2, Some(0.997)),
        (1.247e-2, Some(0.999)),
        (6.242e-3, None),
    ],
    [
        (1.209e-1, Some(1.811)),
        (3.444e-2, Some(1.927)),
        (9.055e-3, Some(1.970)),
        (2.311e-3, Some(1.987)),
        (5.829e-4, Some(1.994)),
        (1.463e-4, Some(1.997)),
        (3.666e-5, None),
    ],
    [
        (4.047e-2, Some(2.699)),
        (6.231e-3, Some(2.886)),
        (8.431e-4, Some(2.954)),
        (1.088e-4, Some(2.980)),
        (1.379e-5, Some(2.988)),
        (1.737e-6, Some(2.937)),
        (2.268e-7, None),
    ],
];

/// Balanced-norm errors on the MBS mesh, indexed `[k - 1][row]`.
pub const BALANCED_MBS: [[Entry; 7]; 3] = [
    [
        (3.290e-1, Some(0.926)),
        (1.732e-1, Some(0.948)),
        (8.980e-2, Some(0.960)),
        (4.616e-2, Some(0.969)),
        (2.358e-2, Some(0.975)),
        (1.199e-2, Some(0.980)),
        (6.080e-3, None),
    ],
    [
        (9.447e-2, Some(1.817)),
        (2.681e-2, Some(1.883)),
        (7.269e-3, Some(1.917)),
        (1.925e-3, Some(1.937)),
        (5.025e-4, Some(1.951)),
        (1.300e-4, Some(1.960)),
        (3.342e-5, None),
    ],
    [
        (2.753e-2, Some(2.734)),
        (4.137e-3, Some(2.827)),
        (5.832e-4, Some(2.876)),
        (7.944e-5, Some(2.906)),
        (1.060e-5, Some(2.923)),
        (1.398e-6, Some(2.868)),
        (1.915e-7, None),
    ],
];

/// S and BS mesh, N = 2^10, k = 2: `(j, S e_dG, S e_dGb, BS e_dG, BS e_dGb)` for ε = 2^-j.
pub const ROBUSTNESS: [(i32, f64, f64, f64, f64); 11] = [
    (10, 5.048e-5, 1.520e-3, 2.263e-6, 7.077e-5),
    (11, 3.549e-5, 1.511e-3, 1.101e-6, 4.773e-5),
    (12, 2.505e-5, 1.507e-3, 6.594e-7, 3.983e-5),
    (13, 1.770e-5, 1.506e-3, 4.422e-7, 3.754e-5),
    (14, 1.251e-5, 1.506e-3, 3.080e-7, 3.691e-5),
    (15, 8.846e-6, 1.505e-3, 2.169e-7, 3.674e-5),
    (16, 6.254e-6, 1.505e-3, 1.532e-7, 3.669e-5),
    (17, 4.422e-6, 1.505e-3, 1.083e-7, 3.667e-5),
    (18, 3.127e-6, 1.505e-3, 7.654e-8, 3.666e-5),
    (19, 2.211e-6, 1.505e-3, 5.412e-8, 3.666e-5),
    (20, 1.564e-6, 1.505e-3, 3.827e-8, 3.666e-5),
];

/// Graded mesh, H = 2^-1..2^-6.
pub const DL_COUNTS: [usize; 6] = [70, 128, 240, 468, 920, 1828];

/// `(e_dG, r, e_dGb, r_b)`.
pub type GradedEntry = (f64, Option<f64>, f64, Option<f64>);

/// Graded mesh, indexed `[k - 1][row]`.
pub const GRADED: [[GradedEntry; 6]; 3] = [
    [
        (4.933e-4, Some(0.711), 1.505e-1, Some(0.969)),
        (3.014e-4, Some(1.887), 7.688e-2, Some(0.981)),
        (8.146e-5, Some(1.502), 3.895e-2, Some(0.989)),
        (2.876e-5, Some(1.359), 1.962e-2, Some(0.994)),
        (1.121e-5, Some(1.156), 9.852e-3, Some(0.997)),
        (5.032e-6, None, 4.937e-3, None),
    ],
    [
        (3.352e-5, Some(2.191), 1.392e-2, Some(1.815)),
        (7.340e-6, Some(2.243), 3.956e-3, Some(1.905)),
        (1.550e-6, Some(2.085), 1.056e-3, Some(1.953)),
        (3.653e-7, Some(2.016), 2.728e-4, Some(1.976)),
        (9.030e-8, Some(1.996), 6.932e-5, Some(1.988)),
        (2.263e-8, None, 1.748e-5, None),
    ],
    [
        (1.689e-6, Some(2.107), 7.900e-4, Some(2.652)),
        (3.920e-7, Some(3.767), 1.257e-4, Some(2.792)),
        (2.879e-8, Some(3.183), 1.815e-5, Some(2.885)),
        (3.171e-9, Some(3.183), 2.456e-6, Some(2.918)),
        (3.491e-10, Some(2.612), 3.250e-7, Some(2.495)),
        (5.710e-11, None, 5.764e-8, None),
    ],
];
