/** Browser bootstrap: wires the editor state to the DOM. */

import { HttpApiClient } from "./api";
import { Editor } from "./state";
import { renderBanner, renderDocument, renderEvidencePanel } from "./render";

function browserLanguage(): string {
  const raw = typeof navigator !== "undefined" ? navigator.language : "en";
  return (raw.split("-")[0] || "en").toLowerCase();
}

export function mount(root: Document = document): void {
  const backend = (root.querySelector("#backend-url") as HTMLInputElement)?.value ?? "";
  const editor = new Editor(new HttpApiClient(backend), browserLanguage());

  const textarea = root.querySelector("#editor-input") as HTMLTextAreaElement;
  const preview = root.querySelector("#editor-preview") as HTMLElement;
  const panel = root.querySelector("#evidence-panel") as HTMLElement;
  const banner = root.querySelector("#banner") as HTMLElement;
  const runButton = root.querySelector("#run-check") as HTMLButtonElement;
  const languageSelect = root.querySelector("#language") as HTMLSelectElement;

  let selected: string | null = null;

  const redraw = () => {
    preview.innerHTML = renderDocument(editor.state);
    banner.innerHTML = renderBanner(editor.state);
    const annotation = editor.state.annotations.find((a) => a.id === selected);
    panel.innerHTML = renderEvidencePanel(annotation);
    runButton.disabled = !editor.canRunCheck();
    runButton.textContent = editor.state.pendingRequest ? "Checking…" : "Run fact-check";
    if (textarea.value !== editor.state.document) textarea.value = editor.state.document;
  };

  editor.onChange(redraw);

  languageSelect.value = browserLanguage();
  languageSelect.addEventListener("change", () => editor.setLanguage(languageSelect.value));
  textarea.addEventListener("input", () => editor.setDocument(textarea.value));
  runButton.addEventListener("click", () => void editor.runCheck());

  preview.addEventListener("click", (event) => {
    const mark = (event.target as HTMLElement).closest("mark[data-id]");
    if (mark) {
      selected = mark.getAttribute("data-id");
      redraw();
    }
  });

  panel.addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest("button[data-action=accept-correction]");
    if (button) {
      editor.acceptCorrection(button.getAttribute("data-id") ?? "");
      selected = null;
      redraw();
    }
  });

  redraw();
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.addEventListener("DOMContentLoaded", () => mount());
}
