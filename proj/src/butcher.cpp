// butcher.cpp

#include "maxglm/htc.hpp"

#include <cmath>
#include <stdexcept>

namespace maxglm {

void ButcherTableau::validate(double tol) const
{
  const int s = stages();
  if (s < 1 || a.rows() != s || a.cols() != s || c.size() != s)
    throw std::invalid_argument(name + ": inconsistent tableau dimensions");
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (a(i, j) != 0.0)
        throw std::invalid_argument(name + ": tableau is not explicit");
  if (std::abs(b.sum() - 1.0) > tol)
    throw std::invalid_argument(name + ": weights do not sum to one");
  for (int i = 0; i < s; ++i)
    if (std::abs(a.row(i).sum() - c[i]) > tol)
      throw std::invalid_argument(name + ": row sums differ from nodes");
}

ButcherTableau rk4_tableau()
{
  ButcherTableau t;
  t.name = "rk4";
  t.order = 4;
  t.a = Eigen::MatrixXd::Zero(4, 4);
  t.a(1, 0) = 0.5;
  t.a(2, 1) = 0.5;
  t.a(3, 2) = 1.0;
  t.b.resize(4);
  t.b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
  t.c.resize(4);
  t.c << 0.0, 0.5, 0.5, 1.0;
  return t;
}

ButcherTableau dop853_tableau()
{
  ButcherTableau t;
  t.name = "dop853";
  t.order = 8;
  t.a = Eigen::MatrixXd::Zero(12, 12);
  t.b = Eigen::VectorXd::Zero(12);
  t.c.resize(12);
  t.c << 0.0,
      0.526001519587677318785587544488e-01,
      0.789002279381515978178381316732e-01,
      0.118350341907227396726757197510,
      0.281649658092772603273242802490,
      0.333333333333333333333333333333,
      0.25,
      0.307692307692307692307692307692,
      0.651282051282051282051282051282,
      0.6,
      0.857142857142857142857142857142,
      1.0;
  t.a(1, 0) = 5.26001519587677318785587544488e-2;
  t.a(2, 0) = 1.97250569845378994544595329183e-2;
  t.a(2, 1) = 5.91751709536136983633785987549e-2;
  t.a(3, 0) = 2.95875854768068491816892993775e-2;
  t.a(3, 2) = 8.87627564304205475450678981324e-2;
  t.a(4, 0) = 2.41365134159266685502369798665e-1;
  t.a(4, 2) = -8.84549479328286085344864962717e-1;
  t.a(4, 3) = 9.24834003261792003115737966543e-1;
  t.a(5, 0) = 3.7037037037037037037037037037e-2;
  t.a(5, 3) = 1.70828608729473871279604482173e-1;
  t.a(5, 4) = 1.25467687566822425016691814123e-1;
  t.a(6, 0) = 3.7109375e-2;
  t.a(6, 3) = 1.70252211019544039314978060272e-1;
  t.a(6, 4) = 6.02165389804559606850219397283e-2;
  t.a(6, 5) = -1.7578125e-2;
  t.a(7, 0) = 3.70920001185047927108779319836e-2;
  t.a(7, 3) = 1.70383925712239993810214054705e-1;
  t.a(7, 4) = 1.07262030446373284651809199168e-1;
  t.a(7, 5) = -1.53194377486244017527936158236e-2;
  t.a(7, 6) = 8.27378916381402288758473766002e-3;
  t.a(8, 0) = 6.24110958716075717114429577812e-1;
  t.a(8, 3) = -3.36089262944694129406857109825;
  t.a(8, 4) = -8.68219346841726006818189891453e-1;
  t.a(8, 5) = 2.75920996994467083049415600797e1;
  t.a(8, 6) = 2.01540675504778934086186788979e1;
  t.a(8, 7) = -4.34898841810699588477366255144e1;
  t.a(9, 0) = 4.77662536438264365890433908527e-1;
  t.a(9, 3) = -2.48811461997166764192642586468;
  t.a(9, 4) = -5.90290826836842996371446475743e-1;
  t.a(9, 5) = 2.12300514481811942347288949897e1;
  t.a(9, 6) = 1.52792336328824235832596922938e1;
  t.a(9, 7) = -3.32882109689848629194453265587e1;
  t.a(9, 8) = -2.03312017085086261358222928593e-2;
  t.a(10, 0) = -9.3714243008598732571704021658e-1;
  t.a(10, 3) = 5.18637242884406370830023853209;
  t.a(10, 4) = 1.09143734899672957818500254654;
  t.a(10, 5) = -8.14978701074692612513997267357;
  t.a(10, 6) = -1.85200656599969598641566180701e1;
  t.a(10, 7) = 2.27394870993505042818970056734e1;
  t.a(10, 8) = 2.49360555267965238987089396762;
  t.a(10, 9) = -3.0467644718982195003823669022;
  t.a(11, 0) = 2.27331014751653820792359768449;
  t.a(11, 3) = -1.05344954667372501984066689879e1;
  t.a(11, 4) = -2.00087205822486249909675718444;
  t.a(11, 5) = -1.79589318631187989172765950534e1;
  t.a(11, 6) = 2.79488845294199600508499808837e1;
  t.a(11, 7) = -2.85899827713502369474065508674;
  t.a(11, 8) = -8.87285693353062954433549289258;
  t.a(11, 9) = 1.23605671757943030647266201528e1;
  t.a(11, 10) = 6.43392746015763530355970484046e-1;
  t.b[0] = 5.42937341165687622380535766363e-2;
  t.b[5] = 4.45031289275240888144113950566;
  t.b[6] = 1.89151789931450038304281599044;
  t.b[7] = -5.8012039600105847814672114227;
  t.b[8] = 3.1116436695781989440891606237e-1;
  t.b[9] = -1.52160949662516078556178806805e-1;
  t.b[10] = 2.01365400804030348374776537501e-1;
  t.b[11] = 4.47106157277725905176885569043e-2;
  return t;
}

ButcherTableau tableau_by_name(const std::string& name)
{
  if (name == "rk4")
    return rk4_tableau();
  if (name == "rk_high" || name == "dop853")
    return dop853_tableau();
  throw std::invalid_argument("unknown Runge-Kutta method '" + name + "'");
}

}  // namespace maxglm
