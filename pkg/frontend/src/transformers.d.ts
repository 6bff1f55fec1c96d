// Optional peer dependency: present only when the real encoder is installed.
declare module "@huggingface/transformers";
