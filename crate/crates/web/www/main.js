import init, { decide, identity_lemma, prime_density } from "./pkg/hnp_web.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  try {
    out.textContent = JSON.stringify(JSON.parse(f()), null, 2);
  } catch (e) {
    out.textContent = "error: " + (e.message || e);
  }
}

await init();

$("decide").onclick = () => show($("decide-out"), () => decide($("sys").value));
$("lemma").onclick = () =>
  show($("lemma-out"), () =>
    identity_lemma($("poly").value, $("vars").value, +$("lo").value, +$("hi").value));
$("density").onclick = () =>
  show($("density-out"), () => prime_density($("plain").value, +$("plo").value, +$("phi").value));
