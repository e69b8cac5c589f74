#include "ahrad/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "ahrad/errors.hpp"

namespace ahrad {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

void write_field_csv(const std::string& path, const RadiationField& F) {
  auto out = open_out(path);
  out << (F.bdim == 2 ? "k1,k2,s,re_F,im_F\n" : "k,s,re_F,im_F\n");
  for (const auto& mt : F.modes)
    for (int i = 0; i < F.grid.n; ++i) {
      if (F.bdim == 2)
        out << mt.k.k1 << ',' << mt.k.k2 << ',';
      else
        out << mt.k.k1 << ',';
      out << fmt17(F.grid.s(i)) << ',' << fmt17(mt.F(i).real()) << ','
          << fmt17(mt.F(i).imag()) << '\n';
    }
}

void write_fourier_csv(const std::string& path, const FourierField& H) {
  auto out = open_out(path);
  out << "k,lambda,re,im\n";
  for (const auto& mt : H.modes)
    for (int l = 0; l < H.lambda.size(); ++l)
      out << mt.k.k1 << ',' << fmt17(H.lambda(l)) << ','
          << fmt17(mt.F(l).real()) << ',' << fmt17(mt.F(l).imag()) << '\n';
}

void write_mode_field_csv(const std::string& path, const ModeField& f) {
  auto out = open_out(path);
  out << "i,j,x_prime,t_prime,re_W,im_W\n";
  for (int j = 0; j < f.nrows(); ++j)
    for (int i = 0; i < f.rowlen(j); ++i)
      out << i << ',' << j << ',' << fmt17(i * f.delta) << ','
          << fmt17(j * f.delta) << ',' << fmt17(f.rows[j](i).real()) << ','
          << fmt17(f.rows[j](i).imag()) << '\n';
}

void write_scattering_json(const std::string& path,
                           const std::vector<ScatteringSample>& samples) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : samples) {
    nlohmann::json j;
    j["k"] = s.k.k1;
    if (s.k.k2 != 0) j["k2"] = s.k.k2;
    j["lambda"] = std::vector<double>(s.lambda.data(),
                                      s.lambda.data() + s.lambda.size());
    std::vector<double> re, im;
    std::vector<bool> mask;
    for (int l = 0; l < s.a.size(); ++l) {
      re.push_back(s.a(l).real());
      im.push_back(s.a(l).imag());
      mask.push_back(s.masked[l]);
    }
    j["a_re"] = re;
    j["a_im"] = im;
    j["masked"] = mask;
    j["method"] = s.method;
    if (!s.probe.empty()) j["probe"] = s.probe;
    arr.push_back(j);
  }
  auto out = open_out(path);
  out << arr.dump(2) << '\n';
}

void write_lax_phillips_csv(const std::string& path,
                            const std::vector<LaxPhillipsSample>& rows) {
  auto out = open_out(path);
  out << "s,y1,y2,value\n";
  for (const auto& r : rows)
    out << fmt17(r.s) << ',' << fmt17(r.y1) << ',' << fmt17(r.y2) << ','
        << fmt17(r.value) << '\n';
}

}  // namespace ahrad
