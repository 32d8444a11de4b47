import init, { explainUpdate, partitionSvg, plantAndRecover } from "./pkg/probphrase_demo.js";

const $ = (id) => document.getElementById(id);

// More-side defaults per hypothesis, matching the library.
const DEFAULTS = { h1: [1.5, 2.5, 4], h2: [9.4, 18, 32], h3: [2, 5, 20], table1: ["", "", ""] };

function explain() {
  try {
    const out = JSON.parse(explainUpdate(
      Number($("ex-prior").value), Number($("ex-lr").value), $("ex-name").value, $("ex-model").value));
    $("ex-sentence").textContent = out.sentence;
    $("ex-sentence").className = "sentence";
    $("ex-detail").textContent = out.range
      ? `Posterior ${out.posterior.toFixed(2)}%; this phrase covers posteriors ${out.range} at this prior.`
      : `Posterior ${out.posterior.toFixed(2)}%.`;
  } catch (e) {
    $("ex-sentence").textContent = String(e);
    $("ex-sentence").className = "sentence error";
    $("ex-detail").textContent = "";
  }
}

function setDefaults() {
  const model = $("pm-model").value;
  ["pm-t1", "pm-t2", "pm-t3"].forEach((id, i) => {
    $(id).value = DEFAULTS[model][i];
    $(id).disabled = model === "table1";
  });
}

function regions() {
  const t = ["pm-t1", "pm-t2", "pm-t3"].map((id) => Number($(id).value));
  try {
    $("pm-figure").innerHTML = partitionSvg($("pm-model").value, t[0], t[1], t[2]);
    $("pm-error").textContent = "";
  } catch (e) {
    $("pm-error").textContent = String(e);
  }
}

function recover() {
  try {
    const out = JSON.parse(plantAndRecover(
      Number($("pr-subjects").value), Number($("pr-eps").value), Number($("pr-seed").value)));
    $("pr-summary").textContent =
      `${out.responses} responses; fitted lines agree with ${(100 * out.fitAccuracy).toFixed(1)}% of them ` +
      `and with the planted function on ${(100 * out.gridAgreement).toFixed(1)}% of the task grid.`;
    $("pr-lines").innerHTML = "<tr><th>boundary</th><th>slope</th><th>intercept</th></tr>" +
      out.lines.map((l) => `<tr><td>${l.boundary}</td><td>${l.slope.toFixed(3)}</td><td>${l.intercept.toFixed(2)}</td></tr>`).join("");
    $("pr-figure").innerHTML = out.svg;
  } catch (e) {
    $("pr-summary").textContent = String(e);
    $("pr-lines").innerHTML = "";
    $("pr-figure").innerHTML = "";
  }
}

await init();
["ex-name", "ex-prior", "ex-lr", "ex-model"].forEach((id) => $(id).addEventListener("input", explain));
$("pm-model").addEventListener("change", () => { setDefaults(); regions(); });
["pm-t1", "pm-t2", "pm-t3"].forEach((id) => $(id).addEventListener("input", regions));
$("pr-run").addEventListener("click", recover);
setDefaults();
explain();
regions();
recover();
