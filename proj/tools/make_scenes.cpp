#include <cstdio>

#include "vfplan/scenes.hpp"

// Regenerates the bundled scene fixtures; run from the repo root after
// changing src/scenes.cpp.
int main(int argc, char** argv) {
  const char* dir = argc > 1 ? argv[1] : "scenes";
  int n = vfplan::write_bundled_scenes(dir);
  std::printf("wrote %d scenes to %s/\n", n, dir);
  return 0;
}
