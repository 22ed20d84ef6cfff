// Regenerates the json fixtures under fixtures/ (or a directory given as
// argv[1]) from the programmatic examples.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gammak/examples.hpp"
#include "gammak/spec_io.hpp"

namespace fs = std::filesystem;
using namespace gammak;

static void emit(const fs::path& dir, const std::string& stem,
                 const CategorySpec& spec) {
    fs::path p = dir / (stem + ".json");
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << p << "\n";
        std::exit(1);
    }
    out << serialize_spec(spec);
    std::cout << p.string() << "\n";
}

int main(int argc, char** argv) {
    fs::path dir = argc > 1 ? argv[1] : "fixtures";
    fs::create_directories(dir);

    CategorySpec c2 = examples::c2();
    CategorySpec x1 = examples::x1();
    CategorySpec m3 = examples::m3();
    emit(dir, "c2", c2);
    emit(dir, "x1", x1);
    emit(dir, "m3", m3);
    emit(dir, "c2_plus", examples::plus_of(c2));
    emit(dir, "x1_plus", examples::plus_of(x1));
    emit(dir, "m3_plus", examples::plus_of(m3));
    emit(dir, "pointed_sets", examples::pointed_sets());
    return 0;
}
