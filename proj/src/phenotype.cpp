#include "suitegen/phenotype.hpp"

#include <sstream>

namespace suitegen {

namespace {

void write_args(std::ostringstream& out, const std::vector<std::int64_t>& args) {
  out << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out << ',';
    out << args[i];
  }
  out << ')';
}

}  // namespace

std::string render_suite(const TestSuite& suite, const UutMetadata& meta) {
  std::ostringstream out;
  out << "import pytest\n";
  out << "import " << meta.file << "\n";
  for (std::size_t t = 0; t < suite.tests.size(); ++t) {
    out << "\ndef test_" << t << "():\n";
    for (const ActionCall& call : suite.tests[t].calls) {
      out << "    ";
      if (call.action_id == kConstructorId) {
        out << "cut = " << meta.file << '.' << meta.class_name;
        write_args(out, call.args);
      } else {
        const ActionSpec& action = meta.actions.at(static_cast<std::size_t>(call.action_id));
        if (action.kind == ActionKind::Assign) {
          out << "cut." << action.name << " = " << call.args.at(0);
        } else {
          out << "cut." << action.name;
          write_args(out, call.args);
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace suitegen
