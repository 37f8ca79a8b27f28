#include "synalg/tolerances.hpp"

namespace synalg {

bool Tolerances::set(std::string_view name, double value) {
  if (name == "sym") sym = value;
  else if (name == "proj") proj = value;
  else if (name == "rank") rank = value;
  else if (name == "psd") psd = value;
  else if (name == "comm") comm = value;
  else if (name == "inv") inv = value;
  else if (name == "cluster") cluster = value;
  else return false;
  return true;
}

const std::vector<std::string>& Tolerances::names() {
  static const std::vector<std::string> kNames = {"sym", "proj", "rank", "psd",
                                                  "comm", "inv", "cluster"};
  return kNames;
}

}  // namespace synalg
