// Thin command-line front end over the shared-library C API.
#include <modfermat.h>

#include <cstdio>

int main(int argc, char** argv) {
  mf_session* session = mf_session_new();
  if (!session) {
    std::fprintf(stderr, "error: cannot create session\n");
    return 2;
  }
  mf_buf* out = nullptr;
  int code = mf_dispatch(session, argc - 1,
                         const_cast<const char* const*>(argv + 1), &out);
  if (out) {
    std::fwrite(mf_buf_data(out), 1, mf_buf_size(out), code == 0 ? stdout : stderr);
    mf_buf_free(out);
  } else if (code != 0) {
    std::fprintf(stderr, "error: %s\n", mf_session_last_error(session));
  }
  mf_session_free(session);
  return code;
}
