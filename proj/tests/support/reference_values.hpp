// Frozen high-precision reference values for tests.
// Generated by an independent arbitrary-precision computation (mpmath);
// regenerate only by rerunning that computation, never by copying library output.
#pragma once

namespace refvals {

struct MlRef { double alpha, beta, z, value; };
inline constexpr MlRef ML_EVAL[] = {
    {0.3, 1.0, -1.0, 0.45659440832969067},
    {0.5, 0.5, -1.0, 0.13660600739194928},
    {0.5, 1.0, -2.0, 0.25539567631050575},
    {0.7, 0.7, -2.0, 0.07735822433852123},
    {0.9, 1.2, -3.0, 0.15868804812508933},
    {0.45, 0.45, -1.2, 0.09742360174802354},
    {0.6, 1.0, 1.5, 11.680047784153997},
    {0.8, 2.0, 2.0, 5.036087391019912},
    {1.0, 1.0, -3.0, 0.049787068367863944},
    {0.9, 1.0, -3.0, 0.08388835403377326},
    {0.3, 1.0, -2.2, 0.2702979479470905},
    {0.4, 1.0, -3.0, 0.19625892833053848},
    {0.5, 0.5, -4.0, 0.016191753047510728},
    {0.5, 1.0, -4.5, 0.12248480427384142},
    {0.6, 0.6, -6.0, 0.008125649877113762},
    {0.7, 1.0, -8.0, 0.046069992385362385},
    {0.7, 0.7, -9.0, 0.0034150085629827986},
    {0.75, 1.0, -10.0, 0.030643250976059636},
    {0.8, 0.8, -12.0, 0.001509159922538111},
    {0.85, 1.0, -15.0, 0.011906370259366434},
    {0.9, 0.9, -20.0, 0.0002840259574119264},
    {0.95, 1.0, -25.0, 0.0022247079107317234},
    {0.6, 0.35, -7.0, -0.025211817463257236},
    {0.4, 1.8, -3.5, 0.2544029891795829},
    {0.5, 2.0, -5.0, 0.19010401892842527},
    {0.7, 2.5, -11.0, 0.08927362126567796},
    {0.3, 1.0, -45.0, 0.016898190970577577},
    {0.5, 0.5, -45.0, 0.00013920300750526964},
    {0.5, 1.0, -80.0, 0.007051818957039103},
    {0.6, 1.0, -60.0, 0.007560619626668459},
    {0.7, 0.7, -100.0, 2.377720552356958e-05},
    {0.8, 0.8, -90.0, 2.212124774651667e-05},
    {0.9, 1.0, -150.0, 0.0007086230236468581},
    {0.95, 0.95, -200.0, 1.2427491004515651e-06},
    {0.5, 3.0, -60.0, 0.012264916065866808},
    {1.0, 1.0, -12.0, 6.14421235332821e-06},
    {1.0, 2.0, -12.0, 0.08333282131563723},
    {1.0, 1.7, -25.0, 0.03120639440758129},
    {1.0, 3.0, -40.0, 0.024375},
    {1.0, 1.0, -30.0, 9.357622968840175e-14},
    {0.5, 1.0, 10.0, 5.376234283632271e+43},
    {0.3, 1.0, 4.0, 4.4100941505093525e+44},
    {0.7, 0.7, 6.0, 1271801.5498956814},
    {1.0, 2.0, 25.0, 2880195973.455435},
    {0.9, 1.0, 15.0, 703347606.8609043},
};

struct MlDerivRef { double alpha, beta, z; int k; double value; };
inline constexpr MlDerivRef ML_DERIV[] = {
    {0.5, 0.5, -0.5, 1, 0.3593459327416325},
    {0.5, 1.0, -2.0, 1, 0.1067964618534896},
    {0.7, 0.7, -1.5, 2, 0.1558273620176235},
    {0.5, 1.0, -1.0, 3, 0.4753618136479605},
    {0.6, 1.0, -2.0, 4, 0.13993355779522762},
    {1.0, 1.0, 0.0, 1, 1.0},
};

struct GammaRef { double x, value; };
inline constexpr GammaRef GAMMA[] = {
    {0.1, 9.51350769866873},
    {0.5, 1.772453850905516},
    {1.5, 0.886226925452758},
    {3.7, 4.170651783796604},
    {7.3, 1271.4236336639087},
    {12.0, 39916800.0},
    {45.6, 2.6023734387686137e+55},
    {120.4, 3.779642168699163e+197},
    {170.2, 1.1918411166366696e+305},
};
inline constexpr GammaRef LOG_GAMMA[] = {
    {200.3, 859.522639861282},
    {10000.0, 82099.71749644238},
    {1000000.0, 12815504.569147611},
};
inline constexpr GammaRef RECIP_GAMMA[] = {
    {-0.5, -0.28209479177387814},
    {-3.2, 1.4512599876819996},
    {-7.7, 5492.267339992172},
    {0.5, 0.5641895835477563},
    {4.0, 0.16666666666666666},
};

struct RegLowerRef { double a, x, value; };
inline constexpr RegLowerRef REG_LOWER[] = {
    {0.5, 0.25, 0.5204998778130465},
    {1.5, 2.0, 0.7385358700508894},
    {2.0, 1.0, 0.26424111765711533},
    {2.5, 0.3, 0.011996757205906266},
    {7.0, 10.0, 0.8698585791175171},
    {0.3, 5.0, 0.9993486812492816},
    {3.0, 0.05, 2.0067493624397945e-05},
    {10.5, 25.0, 0.9996351997027771},
};

struct Ex1Ref { double r, lambda1, alpha, c, x2; };
inline constexpr Ex1Ref EX1_X2[] = {
    {0.5, 0.5, 1.0, 1.2, 0.530049141829179},
    {1.0, 1.0, 1.0, 1.2, 1.0},
    {1.5, 1.5, 1.0, 1.2, 1.4475864305070367},
    {2.0, 2.0, 1.0, 1.2, 1.8844373104863459},
    {2.5, 2.5, 1.0, 1.2, 2.315313903198499},
    {0.7, 0.4, 1.3, 1.1, 1.0410974617673647},
    {1.8, 0.9, 0.8, 1.5, 1.1532104064608937},
    {3.2, 1.5, 2.0, 0.9, 3.4764169352500844},
};

struct Ex2Ref { double r, lambda1, alpha, c, z2, z3; };
inline constexpr Ex2Ref EX2_ROOTS[] = {
    {0.5, 0.25, 1.0, 1.2, 0.2774732115625619, 1.7922365381204564},
    {0.5, 0.2, 1.0, 1.2, 0.3112050480172083, 1.7242527854090643},
    {0.8, 0.3, 1.0, 1.2, 0.4790626908937041, 1.713088584124845},
    {1.0, 0.5, 1.5, 1.2, 0.8907742970688091, 2.5258923695978575},
    {1.2, 0.6, 2.0, 1.05, 1.4063718620887504, 3.27324002927296},
    {1.5, 0.5, 1.0, 1.2, 0.8083105361059667, 1.7565611486374768},
    {2.0, 0.3, 1.0, 1.2, 1.0, 1.425390529679106},
    {2.0, 1.0, 2.0, 1.6, 2.0, 3.036639278016715},
    {2.5, 0.8, 1.0, 1.5, 1.1510570597468373, 1.7584179321825353},
    {3.0, 1.2, 1.5, 1.2, 1.948510753247159, 2.817219721275366},
};

struct Ex3Ref { double mu, lambda2, alpha, c, x2; };
inline constexpr Ex3Ref EX3_X2[] = {
    {0.5, 1.0, 1.0, 1.2, 0.4132004517673087},
    {0.2, 1.0, 1.0, 1.2, 0.47156151792899986},
    {0.1, 1.0, 1.0, 1.2, 0.4865509420431381},
    {0.05, 1.0, 1.0, 1.2, 0.493450228140862},
    {0.75, 0.5, 1.0, 1.2, 0.6139701530581783},
    {0.75, 1.0, 1.0, 1.2, 0.3359684755905392},
    {0.5, 0.5, 1.0, 1.2, 0.6359957280365784},
    {0.9, 1.5, 1.0, 1.2, 0.052294237687109994},
    {1.0, 1.0, 1.0, 1.2, 0.16666666666666663},
};

// end-to-end pipeline oracles for mixed-component models
// MIX1: inter-arrival Gamma(1.5,2) + ML(0.6,1); claims Gamma(2,1.5); c=1.1
struct RootRef { double re, im; };
inline constexpr RootRef MIX1_ROOTS[] = {
    {0.5845151252347722, 0.0},
    {2.028420349454761, 0.0},
};
inline constexpr double MIX_U[] = {0.0, 0.5, 1.0, 2.0, 5.0};
inline constexpr double MIX1_PSI[] = {
    0.4730478335154178, 0.3724520579080183, 0.285058590965674, 0.1616989425476592, 0.028148166084402727
};
// MIX2: inter-arrival Gamma(2,1) + Gamma(1,3); claims Gamma(1,1) + Gamma(2,2); c=1
inline constexpr RootRef MIX2_ROOTS[] = {
    {0.1869201684600863, 0.0},
    {2.145886201810328, -0.4104433542510565},
    {2.145886201810328, 0.4104433542510565},
};
inline constexpr double MIX2_PSI[] = {
    0.7769438947401036, 0.7172167110795862, 0.6573840720369701, 0.5474502114697911, 0.3126946795232121
};

// scalars
inline constexpr double E_HALF_HALF_M1 = 0.13660600739194928;   // E_{1/2,1/2}(-1)
inline constexpr double E_HALF_1_M2 = 0.25539567631050575;       // E_{1/2,1}(-2)
inline constexpr double MLCDF_HALF_1_4 = 0.7446043236894943;   // 1 - E_{1/2,1}(-2)
inline constexpr double U5_CLASSICAL = 16.880464300560217;         // 6 ln(50/3)
inline constexpr double FP_MEAN_HALF_1_4 = 2.256758334191025;      // 2/Gamma(1.5)
inline constexpr double FP_VAR_HALF_1_4 = 5.1638001552503745;
inline constexpr double RIGHT_CAPUTO_XE2X = 0.13006502375572224;   // order 0.5 of x e^(-2x) at x=0.5
inline constexpr double ADJOINT_PAIR1 = 0.2222222222222222;  // both sides, r=1 pair
inline constexpr double ADJOINT_PAIR2 = 0.25;  // both sides, r=0.5 pair
inline constexpr double ADJOINT_PAIR3 = 0.11785113019775792;  // both sides, r=1.5 pair
inline constexpr double CHAR_GAMMA2_ROOT = 0.707499666399733; // positive root, Gamma(2,1)/Exp(1)/c=1.2
inline constexpr double LEFT_RL_X13_E2X = -0.05541386311715161;  // order-0.7 left RL of x^1.3 e^(-2x) at x=1.5
inline constexpr double LEFT_RL_X05_E2X = -0.016844278149292905;  // order-0.5 left RL of x^0.5 e^(-2x) at x=4
inline constexpr double KS_CRIT_1PCT = 1.6276;  // asymptotic 1% Kolmogorov-Smirnov factor

}  // namespace refvals
