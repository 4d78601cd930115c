/*
 * Copyright 2026 The ADS Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "ads/error.h"
#include "ads/oracle.h"

namespace ads {
namespace {

using Clock = std::chrono::steady_clock;

// Child process connected through one AF_UNIX stream socket that serves as
// both its stdin and stdout. Sockets let us write with MSG_NOSIGNAL, so a
// dead child surfaces as EPIPE instead of SIGPIPE.
class SubprocessBackend : public OracleBackend {
 public:
  SubprocessBackend(const std::string& command, InputSpace space,
                    std::chrono::milliseconds timeout)
      : command_(command), space_(std::move(space)), timeout_(timeout) {
    int fds[2];
    if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
      throw QueryError("socketpair failed: " + std::string(strerror(errno)));
    }
    pid_ = fork();
    if (pid_ < 0) {
      close(fds[0]);
      close(fds[1]);
      throw QueryError("fork failed: " + std::string(strerror(errno)));
    }
    if (pid_ == 0) {
      // Own process group, so teardown reaches whatever sh spawns.
      setpgid(0, 0);
      dup2(fds[1], STDIN_FILENO);
      dup2(fds[1], STDOUT_FILENO);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    setpgid(pid_, pid_);
    close(fds[1]);
    fd_ = fds[0];
    fcntl(fd_, F_SETFL, fcntl(fd_, F_GETFL) | O_NONBLOCK);
  }

  ~SubprocessBackend() override {
    if (fd_ >= 0) {
      if (!failed_) send(fd_, "\n", 1, MSG_NOSIGNAL);
      shutdown(fd_, SHUT_WR);
    }
    Reap();
    if (fd_ >= 0) close(fd_);
  }

  std::vector<int> LabelBatch(std::span<const Instance> xs) override {
    if (failed_) {
      throw QueryError("oracle process '" + command_ +
                       "' failed earlier and is unusable");
    }
    std::string out;
    for (const Instance& x : xs) {
      out += EncodeInstanceLine(x, space_);
      out.push_back('\n');
    }

    std::vector<int> labels;
    labels.reserve(xs.size());
    size_t sent = 0;
    auto last_progress = Clock::now();
    char buffer[65536];
    while (labels.size() < xs.size()) {
      pollfd pfd{fd_, static_cast<short>(POLLIN | (sent < out.size() ? POLLOUT : 0)),
                 0};
      const auto elapsed = Clock::now() - last_progress;
      const auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(timeout_ -
                                                                elapsed);
      if (remaining.count() <= 0) {
        Fail("timed out waiting for a reply", xs, labels.size());
      }
      const int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        Fail("poll failed: " + std::string(strerror(errno)), xs, labels.size());
      }
      if (ready == 0) continue;  // re-check the deadline

      if ((pfd.revents & POLLOUT) && sent < out.size()) {
        const ssize_t n =
            send(fd_, out.data() + sent, out.size() - sent, MSG_NOSIGNAL);
        if (n > 0) {
          sent += static_cast<size_t>(n);
          last_progress = Clock::now();
        } else if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK &&
                   errno != EINTR) {
          Fail("process stopped accepting input (" +
                   std::string(strerror(errno)) + ")",
               xs, labels.size());
        }
      }
      if (pfd.revents & (POLLIN | POLLHUP | POLLERR)) {
        const ssize_t n = recv(fd_, buffer, sizeof(buffer), 0);
        if (n > 0) {
          last_progress = Clock::now();
          pending_.append(buffer, static_cast<size_t>(n));
          size_t newline;
          while ((newline = pending_.find('\n')) != std::string::npos) {
            std::string line = pending_.substr(0, newline);
            pending_.erase(0, newline + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (labels.size() >= xs.size()) {
              Fail("unsolicited reply '" + line + "'", xs, xs.size() - 1);
            }
            if (line == "0" || line == "1") {
              labels.push_back(line == "1" ? 1 : 0);
            } else {
              Fail("malformed reply '" + line + "'", xs, labels.size());
            }
          }
        } else if (n == 0) {
          Fail("process exited before replying", xs, labels.size());
        } else if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
          Fail("read failed: " + std::string(strerror(errno)), xs,
               labels.size());
        }
      }
    }
    return labels;
  }

 private:
  [[noreturn]] void Fail(const std::string& what,
                         std::span<const Instance> xs, size_t index) {
    failed_ = true;
    std::string message = "oracle process '" + command_ + "': " + what;
    if (index < xs.size()) {
      message += "; instance: " + EncodeInstanceLine(xs[index], space_);
    }
    throw QueryError(message);
  }

  void Reap() {
    if (pid_ <= 0) return;
    bool exited = false;
    for (int i = 0; i < 200 && !exited; ++i) {
      exited = waitpid(pid_, nullptr, WNOHANG) == pid_;
      if (!exited) std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    // Also clears out stragglers left by a shell that did not exec.
    kill(-pid_, SIGKILL);
    if (!exited) waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }

  std::string command_;
  InputSpace space_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int fd_ = -1;
  bool failed_ = false;
  std::string pending_;
};

}  // namespace

std::unique_ptr<OracleBackend> MakeSubprocessBackend(
    const std::string& command, const InputSpace& space,
    std::chrono::milliseconds timeout) {
  return std::make_unique<SubprocessBackend>(command, space, timeout);
}

}  // namespace ads
