#pragma once

// Dormand-Prince 8(5,3) embedded Runge-Kutta pair with 7th-order dense output
// (Hairer, Norsett & Wanner, "Solving Ordinary Differential Equations I").
// Works in either time direction.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace largesol {

template <std::size_t Dim>
using Vec = std::array<double, Dim>;

namespace dop853_coef {
inline constexpr double c2 = 0.526001519587677318785587544488e-01;
inline constexpr double c3 = 0.789002279381515978178381316732e-01;
inline constexpr double c4 = 0.118350341907227396726757197510e+00;
inline constexpr double c5 = 0.281649658092772603273242802490e+00;
inline constexpr double c6 = 0.333333333333333333333333333333e+00;
inline constexpr double c7 = 0.25e+00;
inline constexpr double c8 = 0.307692307692307692307692307692e+00;
inline constexpr double c9 = 0.651282051282051282051282051282e+00;
inline constexpr double c10 = 0.6e+00;
inline constexpr double c11 = 0.857142857142857142857142857142e+00;
inline constexpr double c14 = 0.1e+00;
inline constexpr double c15 = 0.2e+00;
inline constexpr double c16 = 0.777777777777777777777777777778e+00;
inline constexpr double a21 = 5.26001519587677318785587544488e-2;
inline constexpr double a31 = 1.97250569845378994544595329183e-2;
inline constexpr double a32 = 5.91751709536136983633785987549e-2;
inline constexpr double a41 = 2.95875854768068491816892993775e-2;
inline constexpr double a43 = 8.87627564304205475450678981324e-2;
inline constexpr double a51 = 2.41365134159266685502369798665e-1;
inline constexpr double a53 = -8.84549479328286085344864962717e-1;
inline constexpr double a54 = 9.24834003261792003115737966543e-1;
inline constexpr double a61 = 3.7037037037037037037037037037e-2;
inline constexpr double a64 = 1.70828608729473871279604482173e-1;
inline constexpr double a65 = 1.25467687566822425016691814123e-1;
inline constexpr double a71 = 3.7109375e-2;
inline constexpr double a74 = 1.70252211019544039314978060272e-1;
inline constexpr double a75 = 6.02165389804559606850219397283e-2;
inline constexpr double a76 = -1.7578125e-2;
inline constexpr double a81 = 3.70920001185047927108779319836e-2;
inline constexpr double a84 = 1.70383925712239993810214054705e-1;
inline constexpr double a85 = 1.07262030446373284651809199168e-1;
inline constexpr double a86 = -1.53194377486244017527936158236e-2;
inline constexpr double a87 = 8.27378916381402288758473766002e-3;
inline constexpr double a91 = 6.24110958716075717114429577812e-1;
inline constexpr double a94 = -3.36089262944694129406857109825e0;
inline constexpr double a95 = -8.68219346841726006818189891453e-1;
inline constexpr double a96 = 2.75920996994467083049415600797e1;
inline constexpr double a97 = 2.01540675504778934086186788979e1;
inline constexpr double a98 = -4.34898841810699588477366255144e1;
inline constexpr double a101 = 4.77662536438264365890433908527e-1;
inline constexpr double a104 = -2.48811461997166764192642586468e0;
inline constexpr double a105 = -5.90290826836842996371446475743e-1;
inline constexpr double a106 = 2.12300514481811942347288949897e1;
inline constexpr double a107 = 1.52792336328824235832596922938e1;
inline constexpr double a108 = -3.32882109689848629194453265587e1;
inline constexpr double a109 = -2.03312017085086261358222928593e-2;
inline constexpr double a111 = -9.3714243008598732571704021658e-1;
inline constexpr double a114 = 5.18637242884406370830023853209e0;
inline constexpr double a115 = 1.09143734899672957818500254654e0;
inline constexpr double a116 = -8.14978701074692612513997267357e0;
inline constexpr double a117 = -1.85200656599969598641566180701e1;
inline constexpr double a118 = 2.27394870993505042818970056734e1;
inline constexpr double a119 = 2.49360555267965238987089396762e0;
inline constexpr double a1110 = -3.0467644718982195003823669022e0;
inline constexpr double a121 = 2.27331014751653820792359768449e0;
inline constexpr double a124 = -1.05344954667372501984066689879e1;
inline constexpr double a125 = -2.00087205822486249909675718444e0;
inline constexpr double a126 = -1.79589318631187989172765950534e1;
inline constexpr double a127 = 2.79488845294199600508499808837e1;
inline constexpr double a128 = -2.85899827713502369474065508674e0;
inline constexpr double a129 = -8.87285693353062954433549289258e0;
inline constexpr double a1210 = 1.23605671757943030647266201528e1;
inline constexpr double a1211 = 6.43392746015763530355970484046e-1;
inline constexpr double a141 = 5.61675022830479523392909219681e-2;
inline constexpr double a147 = 2.53500210216624811088794765333e-1;
inline constexpr double a148 = -2.46239037470802489917441475441e-1;
inline constexpr double a149 = -1.24191423263816360469010140626e-1;
inline constexpr double a1410 = 1.5329179827876569731206322685e-1;
inline constexpr double a1411 = 8.20105229563468988491666602057e-3;
inline constexpr double a1412 = 7.56789766054569976138603589584e-3;
inline constexpr double a1413 = -8.298e-3;
inline constexpr double a151 = 3.18346481635021405060768473261e-2;
inline constexpr double a156 = 2.83009096723667755288322961402e-2;
inline constexpr double a157 = 5.35419883074385676223797384372e-2;
inline constexpr double a158 = -5.49237485713909884646569340306e-2;
inline constexpr double a1511 = -1.08347328697249322858509316994e-4;
inline constexpr double a1512 = 3.82571090835658412954920192323e-4;
inline constexpr double a1513 = -3.40465008687404560802977114492e-4;
inline constexpr double a1514 = 1.41312443674632500278074618366e-1;
inline constexpr double a161 = -4.28896301583791923408573538692e-1;
inline constexpr double a166 = -4.69762141536116384314449447206e0;
inline constexpr double a167 = 7.68342119606259904184240953878e0;
inline constexpr double a168 = 4.06898981839711007970213554331e0;
inline constexpr double a169 = 3.56727187455281109270669543021e-1;
inline constexpr double a1613 = -1.39902416515901462129418009734e-3;
inline constexpr double a1614 = 2.9475147891527723389556272149e0;
inline constexpr double a1615 = -9.15095847217987001081870187138e0;
inline constexpr double b1 = 5.42937341165687622380535766363e-2;
inline constexpr double b6 = 4.45031289275240888144113950566e0;
inline constexpr double b7 = 1.89151789931450038304281599044e0;
inline constexpr double b8 = -5.8012039600105847814672114227e0;
inline constexpr double b9 = 3.1116436695781989440891606237e-1;
inline constexpr double b10 = -1.52160949662516078556178806805e-1;
inline constexpr double b11 = 2.01365400804030348374776537501e-1;
inline constexpr double b12 = 4.47106157277725905176885569043e-2;
inline constexpr double e31 = 0.244094488188976377952755905512e+00;
inline constexpr double e32 = 0.733846688281611857341361741547e+00;
inline constexpr double e33 = 0.220588235294117647058823529412e-01;
inline constexpr double e51 = 0.1312004499419488073250102996e-01;
inline constexpr double e56 = -0.1225156446376204440720569753e+01;
inline constexpr double e57 = -0.4957589496572501915214079952e+00;
inline constexpr double e58 = 0.1664377182454986536961530415e+01;
inline constexpr double e59 = -0.3503288487499736816886487290e+00;
inline constexpr double e510 = 0.3341791187130174790297318841e+00;
inline constexpr double e511 = 0.8192320648511571246570742613e-01;
inline constexpr double e512 = -0.2235530786388629525884427845e-01;
inline constexpr double d41 = -0.84289382761090128651353491142e+01;
inline constexpr double d46 = 0.56671495351937776962531783590e+00;
inline constexpr double d47 = -0.30689499459498916912797304727e+01;
inline constexpr double d48 = 0.23846676565120698287728149680e+01;
inline constexpr double d49 = 0.21170345824450282767155149946e+01;
inline constexpr double d410 = -0.87139158377797299206789907490e+00;
inline constexpr double d411 = 0.22404374302607882758541771650e+01;
inline constexpr double d412 = 0.63157877876946881815570249290e+00;
inline constexpr double d413 = -0.88990336451333310820698117400e-01;
inline constexpr double d414 = 0.18148505520854727256656404962e+02;
inline constexpr double d415 = -0.91946323924783554000451984436e+01;
inline constexpr double d416 = -0.44360363875948939664310572000e+01;
inline constexpr double d51 = 0.10427508642579134603413151009e+02;
inline constexpr double d56 = 0.24228349177525818288430175319e+03;
inline constexpr double d57 = 0.16520045171727028198505394887e+03;
inline constexpr double d58 = -0.37454675472269020279518312152e+03;
inline constexpr double d59 = -0.22113666853125306036270938578e+02;
inline constexpr double d510 = 0.77334326684722638389603898808e+01;
inline constexpr double d511 = -0.30674084731089398182061213626e+02;
inline constexpr double d512 = -0.93321305264302278729567221706e+01;
inline constexpr double d513 = 0.15697238121770843886131091075e+02;
inline constexpr double d514 = -0.31139403219565177677282850411e+02;
inline constexpr double d515 = -0.93529243588444783865713862664e+01;
inline constexpr double d516 = 0.35816841486394083752465898540e+02;
inline constexpr double d61 = 0.19985053242002433820987653617e+02;
inline constexpr double d66 = -0.38703730874935176555105901742e+03;
inline constexpr double d67 = -0.18917813819516756882830838328e+03;
inline constexpr double d68 = 0.52780815920542364900561016686e+03;
inline constexpr double d69 = -0.11573902539959630126141871134e+02;
inline constexpr double d610 = 0.68812326946963000169666922661e+01;
inline constexpr double d611 = -0.10006050966910838403183860980e+01;
inline constexpr double d612 = 0.77771377980534432092869265740e+00;
inline constexpr double d613 = -0.27782057523535084065932004339e+01;
inline constexpr double d614 = -0.60196695231264120758267380846e+02;
inline constexpr double d615 = 0.84320405506677161018159903784e+02;
inline constexpr double d616 = 0.11992291136182789328035130030e+02;
inline constexpr double d71 = -0.25693933462703749003312586129e+02;
inline constexpr double d76 = -0.15418974869023643374053993627e+03;
inline constexpr double d77 = -0.23152937917604549567536039109e+03;
inline constexpr double d78 = 0.35763911791061412378285349910e+03;
inline constexpr double d79 = 0.93405324183624310003907691704e+02;
inline constexpr double d710 = -0.37458323136451633156875139351e+02;
inline constexpr double d711 = 0.10409964950896230045147246184e+03;
inline constexpr double d712 = 0.29840293426660503123344363579e+02;
inline constexpr double d713 = -0.43533456590011143754432175058e+02;
inline constexpr double d714 = 0.96324553959188282948394950600e+02;
inline constexpr double d715 = -0.39177261675615439165231486172e+02;
inline constexpr double d716 = -0.14972683625798562581422125276e+03;
}  // namespace dop853_coef

/// Continuous extension over one accepted step [t0, t0 + h].
template <std::size_t Dim>
struct DenseStep {
    double t0 = 0;
    double h = 0;
    std::array<Vec<Dim>, 8> c{};

    double t1() const { return t0 + h; }
    bool contains(double t) const {
        const double lo = std::min(t0, t0 + h), hi = std::max(t0, t0 + h);
        return t >= lo && t <= hi;
    }

    Vec<Dim> eval(double t) const {
        const double s = (t - t0) / h, s1 = 1.0 - s;
        Vec<Dim> y;
        for (std::size_t i = 0; i < Dim; ++i)
            y[i] = c[0][i] + s * (c[1][i] + s1 * (c[2][i] + s * (c[3][i] + s1 * (c[4][i] +
                   s * (c[5][i] + s1 * (c[6][i] + s * c[7][i]))))));
        return y;
    }

    /// Time derivative of the interpolating polynomial.
    Vec<Dim> derivative(double t) const {
        const double s = (t - t0) / h, s1 = 1.0 - s;
        Vec<Dim> out;
        for (std::size_t i = 0; i < Dim; ++i) {
            const double p6 = c[6][i] + s * c[7][i];
            const double p5 = c[5][i] + s1 * p6;
            const double p4 = c[4][i] + s * p5;
            const double p3 = c[3][i] + s1 * p4;
            const double p2 = c[2][i] + s * p3;
            const double p1 = c[1][i] + s1 * p2;
            const double d6 = c[7][i];
            const double d5 = -p6 + s1 * d6;
            const double d4 = p5 + s * d5;
            const double d3 = -p4 + s1 * d4;
            const double d2 = p3 + s * d3;
            const double d1 = -p2 + s1 * d2;
            out[i] = (p1 + s * d1) / h;
        }
        return out;
    }
};

struct Dop853Options {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0;  // 0 selects a step automatically
    long max_steps = 1'000'000;
    bool dense = true;
};

enum class StepControl { Continue, Stop };

enum class Dop853Status { Completed, Stopped, StepUnderflow, MaxSteps, NonFinite };

template <std::size_t Dim>
struct Dop853Result {
    Dop853Status status = Dop853Status::Completed;
    double t = 0;
    Vec<Dim> y{};
    long accepted = 0;
    long rejected = 0;
    long evaluations = 0;
};

namespace detail {

template <std::size_t Dim>
bool all_finite(const Vec<Dim>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace detail

/// Integrates y' = f(t, y) from (t0, y0) towards t_end.
///
/// After each accepted step the observer is called as
///     StepControl observer(const DenseStep<Dim>&, const Vec<Dim>& y_new, double err)
/// and may stop the integration. `err` is the scaled local error estimate (<= 1).
template <std::size_t Dim, class Rhs, class Observer>
Dop853Result<Dim> dop853(Rhs&& f, double t0, const Vec<Dim>& y0, double t_end,
                         const Dop853Options& opt, Observer&& observer) {
    using namespace dop853_coef;
    constexpr double uround = std::numeric_limits<double>::epsilon();
    constexpr double safe = 0.9, fac1 = 0.333, fac2 = 6.0, beta = 0.0;
    const double expo1 = 1.0 / 8.0 - beta * 0.2;
    const double facc1 = 1.0 / fac1, facc2 = 1.0 / fac2;
    const double dir = t_end >= t0 ? 1.0 : -1.0;
    const double hmax = std::min(opt.max_step, std::fabs(t_end - t0));

    Dop853Result<Dim> res;
    res.t = t0;
    res.y = y0;
    if (t_end == t0) return res;

    auto eval = [&](double t, const Vec<Dim>& y) {
        ++res.evaluations;
        return f(t, y);
    };
    auto scale = [&](double a, double b) {
        return opt.abs_tol + opt.rel_tol * std::max(std::fabs(a), std::fabs(b));
    };

    double t = t0;
    Vec<Dim> y = y0;
    Vec<Dim> k1 = eval(t, y);
    if (!detail::all_finite(k1)) {
        res.status = Dop853Status::NonFinite;
        return res;
    }

    // Starting step size, following Hairer's HINIT.
    double h = opt.initial_step;
    if (h == 0) {
        double dnf = 0, dny = 0;
        for (std::size_t i = 0; i < Dim; ++i) {
            const double sk = scale(y[i], y[i]);
            dnf += (k1[i] / sk) * (k1[i] / sk);
            dny += (y[i] / sk) * (y[i] / sk);
        }
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, hmax);
        Vec<Dim> y1;
        for (std::size_t i = 0; i < Dim; ++i) y1[i] = y[i] + dir * h * k1[i];
        const Vec<Dim> f1 = eval(t + dir * h, y1);
        double der2 = 0;
        for (std::size_t i = 0; i < Dim; ++i) {
            const double sk = scale(y[i], y[i]);
            der2 += ((f1[i] - k1[i]) / sk) * ((f1[i] - k1[i]) / sk);
        }
        der2 = std::isfinite(der2) ? std::sqrt(der2) / h : 1e300;
        const double der12 = std::max(std::fabs(der2), std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 1.0 / 8.0);
        h = std::min({100 * h, h1, hmax});
    }
    h = dir * std::min(std::fabs(h), hmax);

    double facold = 1e-4;
    bool reject = false, last = false;
    Vec<Dim> k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, k13, yt, ynew;

    for (;;) {
        if (res.accepted + res.rejected >= opt.max_steps) {
            res.status = Dop853Status::MaxSteps;
            break;
        }
        if (0.1 * std::fabs(h) <= std::fabs(t) * uround || std::fabs(h) < 1e-300) {
            res.status = Dop853Status::StepUnderflow;
            break;
        }
        if ((t + 1.01 * h - t_end) * dir > 0.0) {
            h = t_end - t;
            last = true;
        }

        for (std::size_t i = 0; i < Dim; ++i) yt[i] = y[i] + h * a21 * k1[i];
        k2 = eval(t + c2 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = eval(t + c3 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a43 * k3[i]);
        k4 = eval(t + c4 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = eval(t + c5 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = eval(t + c6 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7 = eval(t + c7 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
        k8 = eval(t + c8 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] +
                                a98 * k8[i]);
        k9 = eval(t + c9 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                                a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
        k10 = eval(t + c10 * h, yt);
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                                a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
        k11 = eval(t + c11 * h, yt);
        const double tph = t + h;
        for (std::size_t i = 0; i < Dim; ++i)
            yt[i] = y[i] + h * (a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                                a127 * k7[i] + a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] +
                                a1211 * k11[i]);
        k12 = eval(tph, yt);

        Vec<Dim> incr;
        for (std::size_t i = 0; i < Dim; ++i) {
            incr[i] = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                      b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
            ynew[i] = y[i] + h * incr[i];
        }

        double err = 0, err2 = 0;
        for (std::size_t i = 0; i < Dim; ++i) {
            const double sk = scale(y[i], ynew[i]);
            const double e3 = incr[i] - e31 * k1[i] - e32 * k9[i] - e33 * k12[i];
            const double e5 = e51 * k1[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] + e59 * k9[i] +
                              e510 * k10[i] + e511 * k11[i] + e512 * k12[i];
            err2 += (e3 / sk) * (e3 / sk);
            err += (e5 / sk) * (e5 / sk);
        }
        double deno = err + 0.01 * err2;
        if (deno <= 0.0) deno = 1.0;
        err = std::fabs(h) * err * std::sqrt(1.0 / (static_cast<double>(Dim) * deno));

        if (!std::isfinite(err) || !detail::all_finite(ynew)) {
            // Overshoot into a singularity: shrink hard and retry.
            ++res.rejected;
            h *= 0.1;
            last = false;
            reject = true;
            continue;
        }

        const double fac11 = std::pow(err, expo1);
        double fac = fac11 / std::pow(facold, beta);
        fac = std::max(facc2, std::min(facc1, fac / safe));
        double hnew = h / fac;

        if (err <= 1.0) {
            facold = std::max(err, 1e-4);
            k13 = eval(tph, ynew);
            if (!detail::all_finite(k13)) {
                ++res.rejected;
                h *= 0.1;
                last = false;
                reject = true;
                continue;
            }
            ++res.accepted;

            DenseStep<Dim> ds;
            ds.t0 = t;
            ds.h = h;
            if (opt.dense) {
                for (std::size_t i = 0; i < Dim; ++i) {
                    const double ydiff = ynew[i] - y[i];
                    const double bspl = h * k1[i] - ydiff;
                    ds.c[0][i] = y[i];
                    ds.c[1][i] = ydiff;
                    ds.c[2][i] = bspl;
                    ds.c[3][i] = ydiff - h * k13[i] - bspl;
                    ds.c[4][i] = d41 * k1[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] + d49 * k9[i] +
                                 d410 * k10[i] + d411 * k11[i] + d412 * k12[i] + d413 * k13[i];
                    ds.c[5][i] = d51 * k1[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] + d59 * k9[i] +
                                 d510 * k10[i] + d511 * k11[i] + d512 * k12[i] + d513 * k13[i];
                    ds.c[6][i] = d61 * k1[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] + d69 * k9[i] +
                                 d610 * k10[i] + d611 * k11[i] + d612 * k12[i] + d613 * k13[i];
                    ds.c[7][i] = d71 * k1[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] + d79 * k9[i] +
                                 d710 * k10[i] + d711 * k11[i] + d712 * k12[i] + d713 * k13[i];
                }
                Vec<Dim> k14, k15, k16;
                for (std::size_t i = 0; i < Dim; ++i)
                    yt[i] = y[i] + h * (a141 * k1[i] + a147 * k7[i] + a148 * k8[i] + a149 * k9[i] +
                                        a1410 * k10[i] + a1411 * k11[i] + a1412 * k12[i] +
                                        a1413 * k13[i]);
                k14 = eval(t + c14 * h, yt);
                for (std::size_t i = 0; i < Dim; ++i)
                    yt[i] = y[i] + h * (a151 * k1[i] + a156 * k6[i] + a157 * k7[i] + a158 * k8[i] +
                                        a1511 * k11[i] + a1512 * k12[i] + a1513 * k13[i] +
                                        a1514 * k14[i]);
                k15 = eval(t + c15 * h, yt);
                for (std::size_t i = 0; i < Dim; ++i)
                    yt[i] = y[i] + h * (a161 * k1[i] + a166 * k6[i] + a167 * k7[i] + a168 * k8[i] +
                                        a169 * k9[i] + a1613 * k13[i] + a1614 * k14[i] +
                                        a1615 * k15[i]);
                k16 = eval(t + c16 * h, yt);
                for (std::size_t i = 0; i < Dim; ++i) {
                    ds.c[4][i] = h * (ds.c[4][i] + d414 * k14[i] + d415 * k15[i] + d416 * k16[i]);
                    ds.c[5][i] = h * (ds.c[5][i] + d514 * k14[i] + d515 * k15[i] + d516 * k16[i]);
                    ds.c[6][i] = h * (ds.c[6][i] + d614 * k14[i] + d615 * k15[i] + d616 * k16[i]);
                    ds.c[7][i] = h * (ds.c[7][i] + d714 * k14[i] + d715 * k15[i] + d716 * k16[i]);
                }
            }

            k1 = k13;
            y = ynew;
            t = tph;
            res.t = t;
            res.y = y;

            if (observer(ds, y, err) == StepControl::Stop) {
                res.status = Dop853Status::Stopped;
                return res;
            }
            if (last) {
                res.status = Dop853Status::Completed;
                return res;
            }
            if (std::fabs(hnew) > hmax) hnew = dir * hmax;
            if (reject) hnew = dir * std::min(std::fabs(hnew), std::fabs(h));
            reject = false;
        } else {
            hnew = h / std::min(facc1, fac11 / safe);
            reject = true;
            last = false;
            ++res.rejected;
        }
        h = hnew;
    }
    res.t = t;
    res.y = y;
    return res;
}

/// Accepted steps of one integration, searchable by time in either direction.
template <std::size_t Dim>
class DenseSolution {
public:
    void push(const DenseStep<Dim>& s) { steps_.push_back(s); }
    bool empty() const { return steps_.empty(); }
    std::size_t size() const { return steps_.size(); }
    const std::vector<DenseStep<Dim>>& steps() const { return steps_; }

    double t_begin() const { return steps_.front().t0; }
    double t_end() const { return steps_.back().t1(); }
    double t_min() const { return std::min(t_begin(), t_end()); }
    double t_max() const { return std::max(t_begin(), t_end()); }

    Vec<Dim> operator()(double t) const { return locate(t).eval(t); }
    Vec<Dim> derivative(double t) const { return locate(t).derivative(t); }

    const DenseStep<Dim>& locate(double t) const {
        const bool forward = steps_.front().h > 0;
        // Steps are monotone in t0; binary search on the step end points.
        auto it = std::lower_bound(steps_.begin(), steps_.end(), t,
                                   [forward](const DenseStep<Dim>& s, double x) {
                                       return forward ? s.t1() < x : s.t1() > x;
                                   });
        if (it == steps_.end()) --it;
        return *it;
    }

private:
    std::vector<DenseStep<Dim>> steps_;
};

}  // namespace largesol
