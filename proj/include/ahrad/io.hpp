#pragma once
#include <string>
#include <vector>

#include "ahrad/goursat.hpp"
#include "ahrad/radiation.hpp"
#include "ahrad/scattering.hpp"

namespace ahrad {

/// Full-precision scientific formatting (17 significant digits).
std::string fmt17(double v);

void write_field_csv(const std::string& path, const RadiationField& F);
void write_fourier_csv(const std::string& path, const FourierField& H);
void write_mode_field_csv(const std::string& path, const ModeField& f);
void write_scattering_json(const std::string& path,
                           const std::vector<ScatteringSample>& samples);

/// (s, y1, y2, value) rows.
struct LaxPhillipsSample {
  double s, y1, y2, value;
};
void write_lax_phillips_csv(const std::string& path,
                            const std::vector<LaxPhillipsSample>& rows);

}  // namespace ahrad
